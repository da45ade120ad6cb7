// Workbench entry point: wires the service client, the websocket channel
// and the widgets together. All geometry, torques and game decisions come
// from the service; this file only routes payloads.

import { ApiClient, ServiceError } from './api'
import { BoardView } from './board'
import { LatestWins } from './debounce'
import { EventsClient } from './events'
import { IkPanel } from './ikpanel'
import { Scene3D } from './scene3d'
import { segmentsFromOrigins } from './skeleton'
import {
  applyFrame,
  applyGameState,
  applyIkResult,
  applySkeleton,
  initialState,
  setOnline,
} from './state'
import { drawSweepChart, seriesFromSweep } from './sweep'
import type { SceneState } from './state'

const api = new ApiClient()
let state: SceneState = initialState()

const sceneEl = document.getElementById('scene')!
const banner = document.getElementById('offline-banner')!
const badge = document.getElementById('error-badge')!
const sweepCanvas = document.getElementById('sweep-chart') as HTMLCanvasElement
const sweepNote = document.getElementById('sweep-note')!

const scene = new Scene3D(sceneEl)
const board = new BoardView(document.getElementById('board')!)
const ikPanel = new IkPanel(document.getElementById('ik-panel')!)

function update(next: SceneState): void {
  state = next
  if (state.origins) scene.setSegments(segmentsFromOrigins(state.origins))
  board.render(state.board, state.boardStatus, state.sideToMove)
  banner.style.display = state.online ? 'none' : 'block'
  badge.textContent = state.droppedFrames > 0 ? `dropped frames: ${state.droppedFrames}` : ''
  if (state.targetMarker) scene.setMarkerState(state.targetMarker.reachable)
}

function markOffline(): void {
  update(setOnline(state, false))
}

// ----- IK target dragging: one request in flight, the newest drag wins -----

let rightShoulder: number[] = [0, -38, -46]

const ikGate = new LatestWins(async (markerPosition: number[]) => {
  const local = [
    markerPosition[0] - rightShoulder[0],
    markerPosition[1] - rightShoulder[1],
    markerPosition[2] - rightShoulder[2],
  ]
  try {
    const result = await api.ik(local)
    update(applyIkResult(state, markerPosition, result))
    ikPanel.render(result)
    const skel = await api.skeleton(state.jointsLeft, result.joints, state.jointsHead)
    update(applySkeleton(state, skel.origins))
    return result
  } catch (error) {
    if (error instanceof ServiceError && error.code === 'ik_not_converged') {
      const result = error.body as Parameters<typeof ikPanel.render>[0]
      update(applyIkResult(state, markerPosition, result))
      ikPanel.render(result)
      return result
    }
    markOffline()
    throw error
  }
})

scene.onTargetDrag = (position) => {
  void ikGate.submit(position)
}

// ----- game wiring: one mutation in flight per session -----

const moveGate = new LatestWins(async (cell: number) => {
  if (!state.session) return
  try {
    const result = await api.gameMove(state.session, cell)
    update(applyGameState(state, result))
    return result
  } catch (error) {
    if (error instanceof ServiceError) {
      if (error.code === 'illegal_move' || error.code === 'turn_order') {
        board.flash(cell)
        return
      }
    }
    markOffline()
    throw error
  }
})

board.onCellClick = (cell) => {
  if (moveGate.busy) return // one in-flight mutation per session
  void moveGate.submit(cell)
}

const events = new EventsClient(
  `${location.protocol === 'https:' ? 'wss' : 'ws'}://${location.host}/events`, {
    onFrame: (frame) => update(applyFrame(state, frame)),
    onPlanEnd: () => update({ ...state, playback: null }),
    onDropped: () => update({ ...state, droppedFrames: state.droppedFrames + 1 }),
    onOnline: (online) => update(setOnline(state, online)),
  })

// ----- boot -----

async function boot(): Promise<void> {
  try {
    const config = await api.getConfig()
    const boardCfg = config.board as {
      width: number
      height: number
      pose: { translation: number[]; rotation: number[] }
    }
    scene.setBoard({
      width: boardCfg.width,
      height: boardCfg.height,
      translation: boardCfg.pose.translation,
      rotation: boardCfg.pose.rotation,
    })

    const skel = await api.skeleton(state.jointsLeft, state.jointsRight, state.jointsHead)
    rightShoulder = skel.origins.right[0]
    update(applySkeleton(setOnline(state, true), skel.origins))

    const game = await api.gameNew()
    update(applyGameState(state, game))
    events.connect()
    events.subscribe(game.session)

    const sweep = await api.sweep(0, undefined, 1)
    drawSweepChart(sweepCanvas, seriesFromSweep(sweep))
    sweepNote.textContent = sweep.note
  } catch {
    markOffline()
    setTimeout(boot, 2000)
  }
}

void boot()
