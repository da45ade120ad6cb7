// Typed client for the JSON service. The workbench never computes
// kinematics, torques or game logic; it only ships these payloads around.

import type {
  FKResponse,
  GameMoveResponse,
  GameNewResponse,
  IKResponse,
  PlanResponse,
  SkeletonResponse,
  SweepResponse,
} from './types'

export class ServiceError extends Error {
  readonly code: string
  readonly status: number
  readonly body: unknown

  constructor(code: string, message: string, status: number, body: unknown) {
    super(message)
    this.code = code
    this.status = status
    this.body = body
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>

export class ApiClient {
  private readonly base: string
  private readonly fetchFn: FetchLike

  constructor(base = '', fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.base = base.replace(/\/$/, '')
    this.fetchFn = fetchFn
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init)
    const body = await response.json()
    if (!response.ok) {
      const err = body as { error?: string; message?: string }
      throw new ServiceError(err.error ?? 'http_error',
        err.message ?? response.statusText, response.status, body)
    }
    return body as T
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(payload),
    })
  }

  getConfig(): Promise<Record<string, unknown>> {
    return this.request('/config')
  }

  fk(arm: string, joints: number[]): Promise<FKResponse> {
    return this.post('/fk', { arm, joints })
  }

  ik(position: number[]): Promise<IKResponse> {
    return this.post('/ik', { position })
  }

  ikPose(pose: { translation: number[]; rotation: number[] }): Promise<IKResponse> {
    return this.post('/ik', { pose })
  }

  skeleton(jointsLeft: number[], jointsRight: number[], jointsHead: number[]): Promise<SkeletonResponse> {
    return this.post('/skeleton', {
      joints_left: jointsLeft,
      joints_right: jointsRight,
      joints_head: jointsHead,
    })
  }

  sweep(min = 0, max?: number, step = 1): Promise<SweepResponse> {
    const params = new URLSearchParams({ min: String(min), step: String(step) })
    if (max !== undefined) params.set('max', String(max))
    return this.request(`/design/sweep?${params}`)
  }

  plan(object: number[], goal: number[]): Promise<PlanResponse> {
    return this.post('/plan', { object, goal })
  }

  gameNew(): Promise<GameNewResponse> {
    return this.post('/game/new', {})
  }

  gameMove(session: string, cell: number): Promise<GameMoveResponse> {
    return this.post('/game/move', { session, cell })
  }
}
