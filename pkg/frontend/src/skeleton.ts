// Turn server-provided joint origins into drawable line segments.
// Pure data plumbing: every endpoint is a server number, verbatim.

import type { SkeletonOrigins } from './types'

export interface Segment {
  from: number[]
  to: number[]
  chain: 'left' | 'right' | 'head' | 'torso'
}

const NECK_BASE = [0, 0, 0]

export function segmentsFromOrigins(origins: SkeletonOrigins): Segment[] {
  const segments: Segment[] = []
  for (const chain of ['left', 'right', 'head'] as const) {
    const points = origins[chain]
    // torso link from the neck base down/out to the chain's first frame
    segments.push({ from: NECK_BASE, to: points[0], chain: 'torso' })
    for (let i = 0; i + 1 < points.length; i++) {
      segments.push({ from: points[i], to: points[i + 1], chain })
    }
  }
  return segments
}

export function jointPoints(origins: SkeletonOrigins): Array<{ point: number[]; chain: string }> {
  const out: Array<{ point: number[]; chain: string }> = []
  for (const chain of ['left', 'right', 'head'] as const) {
    for (const point of origins[chain]) out.push({ point, chain })
  }
  return out
}
