// Contract tests: state reducers mirror recorded service responses
// verbatim, with no locally computed geometry.

import { describe, expect, it } from 'vitest'

import {
  applyFrame,
  applyGameState,
  applyIkResult,
  applySkeleton,
  initialState,
  isValidFrame,
  setOnline,
} from '../src/state'
import type { IKResponse, SkeletonResponse } from '../src/types'

import framesHead from './fixtures/events_frames_head.json'
import gameMove from './fixtures/game_move_cell0.json'
import gameNew from './fixtures/game_new.json'
import ikReachable from './fixtures/ik_reachable.json'
import ikUnreachable from './fixtures/ik_unreachable.json'
import skeletonZero from './fixtures/skeleton_zero.json'

const skeleton = skeletonZero as SkeletonResponse

describe('skeleton state', () => {
  it('stores server origins verbatim', () => {
    const state = applySkeleton(initialState(), skeleton.origins)
    expect(state.origins).toBe(skeleton.origins)
    // spot-check the recorded numbers survive untouched
    expect(state.origins!.right[0]).toEqual([0, -38, -46])
    expect(state.origins!.left[0]).toEqual([0, 38, -46])
    expect(state.origins!.head[0]).toEqual([0, 0, 0])
    expect(state.origins!.right.at(-1)![2]).toBeCloseTo(4, 9) // -46 + 50 from the server
  })
})

describe('playback frames', () => {
  it('applies recorded frames verbatim', () => {
    let state = initialState()
    for (const frame of framesHead) {
      state = applyFrame(state, frame)
    }
    const last = framesHead.at(-1)!
    expect(state.jointsLeft).toEqual(last.joints_left)
    expect(state.jointsRight).toEqual(last.joints_right)
    expect(state.playback).toEqual({ actionIndex: last.action_index, step: last.step })
    expect(state.droppedFrames).toBe(0)
  })

  it('drops malformed frames and counts them', () => {
    let state = initialState()
    const before = { ...state }
    state = applyFrame(state, { step: 0 })
    state = applyFrame(state, { step: 1, action_index: 0, joints_left: [1, 2], joints_right: [0, 0, 0, 0, 0, 0] })
    state = applyFrame(state, 'garbage')
    expect(state.droppedFrames).toBe(3)
    expect(state.jointsLeft).toEqual(before.jointsLeft)
    expect(state.playback).toBeNull()
  })

  it('validates recorded frames as well-formed', () => {
    for (const frame of framesHead) {
      expect(isValidFrame(frame)).toBe(true)
    }
  })
})

describe('ik state', () => {
  it('marks reachable targets from the recorded response', () => {
    const result = ikReachable as IKResponse
    expect(result.converged).toBe(true)
    const state = applyIkResult(initialState(), [0, 30, 20], result)
    expect(state.targetMarker).toEqual({ position: [0, 30, 20], reachable: true })
    expect(state.lastIk).toBe(result)
    expect(state.lastIk!.joints).toHaveLength(6)
    // the trace came monotonically non-increasing from the server
    const trace = state.lastIk!.trace
    for (let i = 1; i < trace.length; i++) {
      expect(trace[i]).toBeLessThanOrEqual(trace[i - 1] + 1e-12)
    }
  })

  it('marks unreachable targets red from the recorded 422 payload', () => {
    const result = ikUnreachable as IKResponse
    expect(result.converged).toBe(false)
    const state = applyIkResult(initialState(), [0, 0, 80], result)
    expect(state.targetMarker!.reachable).toBe(false)
    expect(result.residual).toBeGreaterThan(29)
  })
})

describe('game state', () => {
  it('mirrors the recorded new-game and move responses', () => {
    let state = applyGameState(initialState(), gameNew)
    expect(state.board).toBe('.........')
    expect(state.sideToMove).toBe('O')
    state = applyGameState(state, gameMove)
    expect(state.board).toBe(gameMove.board)
    expect(state.board[0]).toBe('O')
    expect(state.board[gameMove.reply_cell!]).toBe('X')
    expect(state.boardStatus).toBe('in_progress')
  })
})

describe('offline handling', () => {
  it('flips the flag without touching the frozen scene', () => {
    let state = applySkeleton(initialState(), skeleton.origins)
    state = setOnline(state, true)
    const frozen = state.origins
    state = setOnline(state, false)
    expect(state.online).toBe(false)
    expect(state.origins).toBe(frozen)
  })
})
