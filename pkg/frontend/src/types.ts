// Wire types mirroring the service schemas (schema_version 1).

export interface PoseBody {
  translation: number[]
  rotation: number[]
}

export interface FKResponse {
  schema_version: number
  arm: string
  pose: PoseBody
  origins_neck: number[][]
}

export interface IKResponse {
  schema_version: number
  converged: boolean
  joints: number[]
  iterations: number
  residual: number
  trace: number[]
  singular_wrist: boolean
  message: string
  units: string
}

export interface SweepRow {
  L1: number
  L2: number
  T1: number
  T2: number
  feasible: boolean
}

export interface SweepResponse {
  schema_version: number
  rows: SweepRow[]
  limits: { T1wc: number; T2wc: number }
  feasible_interval: number[] | null
  note: string
}

export interface ActionBody {
  kind: 'move' | 'grip' | 'release'
  arm: 'left' | 'right'
  tag: string | null
  pose: PoseBody | null
  joints: number[] | null
}

export interface PlanResponse {
  schema_version: number
  handover: boolean
  actions: ActionBody[]
  core_action_count: number
}

export interface SkeletonOrigins {
  left: number[][]
  right: number[][]
  head: number[][]
}

export interface SkeletonResponse {
  schema_version: number
  origins: SkeletonOrigins
}

export interface GameNewResponse {
  schema_version: number
  session: string
  board: string
  side_to_move: string
  status: string
}

export interface GameMoveResponse {
  schema_version: number
  session: string
  board: string
  side_to_move: string
  status: string
  reply_cell: number | null
  plan: PlanResponse | null
}

export interface EventFrame {
  session: string
  step: number
  action_index: number
  joints_left: number[]
  joints_right: number[]
  origins?: SkeletonOrigins
}

export interface ErrorBody {
  error: string
  message: string
}
