// Scene state: a verbatim mirror of the latest service responses.
// Nothing in here derives geometry or game outcomes locally; reducers only
// copy validated server payloads into place.

import type { EventFrame, IKResponse, SkeletonOrigins } from './types'

export interface SceneState {
  origins: SkeletonOrigins | null
  jointsLeft: number[]
  jointsRight: number[]
  jointsHead: number[]
  targetMarker: { position: number[]; reachable: boolean } | null
  lastIk: IKResponse | null
  playback: { actionIndex: number; step: number } | null
  board: string
  boardStatus: string
  sideToMove: string
  session: string | null
  online: boolean
  droppedFrames: number
}

export function initialState(): SceneState {
  return {
    origins: null,
    jointsLeft: [0, 0, 0, 0, 0, 0],
    jointsRight: [0, 0, 0, 0, 0, 0],
    jointsHead: [0, 0],
    targetMarker: null,
    lastIk: null,
    playback: null,
    board: '.........',
    boardStatus: 'in_progress',
    sideToMove: 'O',
    session: null,
    online: false,
    droppedFrames: 0,
  }
}

function isVector(value: unknown, length: number): value is number[] {
  return Array.isArray(value) && value.length === length &&
    value.every((x) => typeof x === 'number' && Number.isFinite(x))
}

function isOriginList(value: unknown): value is number[][] {
  return Array.isArray(value) && value.length > 0 &&
    value.every((p) => isVector(p, 3))
}

export function isValidOrigins(value: unknown): value is SkeletonOrigins {
  if (typeof value !== 'object' || value === null) return false
  const o = value as Record<string, unknown>
  return isOriginList(o.left) && isOriginList(o.right) && isOriginList(o.head)
}

export function isValidFrame(value: unknown): value is EventFrame {
  if (typeof value !== 'object' || value === null) return false
  const f = value as Record<string, unknown>
  if (typeof f.step !== 'number' || typeof f.action_index !== 'number') return false
  if (!isVector(f.joints_left, 6) || !isVector(f.joints_right, 6)) return false
  if (f.origins !== undefined && !isValidOrigins(f.origins)) return false
  return true
}

export function applySkeleton(state: SceneState, origins: SkeletonOrigins): SceneState {
  return { ...state, origins }
}

/** Apply one playback frame; malformed frames are dropped and counted. */
export function applyFrame(state: SceneState, frame: unknown): SceneState {
  if (!isValidFrame(frame)) {
    return { ...state, droppedFrames: state.droppedFrames + 1 }
  }
  return {
    ...state,
    jointsLeft: frame.joints_left,
    jointsRight: frame.joints_right,
    origins: frame.origins ?? state.origins,
    playback: { actionIndex: frame.action_index, step: frame.step },
  }
}

export function applyIkResult(state: SceneState, position: number[], result: IKResponse): SceneState {
  return {
    ...state,
    lastIk: result,
    targetMarker: { position, reachable: result.converged },
  }
}

export function applyGameState(state: SceneState, payload: {
  session: string
  board: string
  status: string
  side_to_move: string
}): SceneState {
  return {
    ...state,
    session: payload.session,
    board: payload.board,
    boardStatus: payload.status,
    sideToMove: payload.side_to_move,
  }
}

export function setOnline(state: SceneState, online: boolean): SceneState {
  // going offline freezes the last rendered state; we only flip the flag
  return { ...state, online }
}
