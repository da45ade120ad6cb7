// Torque sweep chart: series extraction plus a small canvas renderer.
// Infeasible rows become gaps (null), never plotted sentinel values.

import type { SweepResponse } from './types'

export interface SweepSeries {
  l1: number[]
  t1: Array<number | null>
  t2: Array<number | null>
  limits: { T1wc: number; T2wc: number }
  interval: number[] | null
}

export function seriesFromSweep(sweep: SweepResponse): SweepSeries {
  return {
    l1: sweep.rows.map((r) => r.L1),
    t1: sweep.rows.map((r) => (r.feasible ? r.T1 : null)),
    t2: sweep.rows.map((r) => (r.feasible ? r.T2 : null)),
    limits: sweep.limits,
    interval: sweep.feasible_interval,
  }
}

export function drawSweepChart(canvas: HTMLCanvasElement, series: SweepSeries): void {
  const ctx = canvas.getContext('2d')
  if (!ctx) return
  const w = canvas.width
  const h = canvas.height
  const pad = 36
  ctx.clearRect(0, 0, w, h)

  const xMin = Math.min(...series.l1)
  const xMax = Math.max(...series.l1)
  const yMax = Math.max(series.limits.T1wc, series.limits.T2wc) * 1.4
  const sx = (x: number) => pad + ((x - xMin) / (xMax - xMin)) * (w - 2 * pad)
  const sy = (y: number) => h - pad - (y / yMax) * (h - 2 * pad)

  if (series.interval) {
    ctx.fillStyle = 'rgba(80, 200, 120, 0.15)'
    ctx.fillRect(sx(series.interval[0]), pad,
      sx(series.interval[1]) - sx(series.interval[0]), h - 2 * pad)
  }

  const limitLine = (y: number, label: string) => {
    ctx.strokeStyle = '#b05050'
    ctx.setLineDash([5, 4])
    ctx.beginPath()
    ctx.moveTo(pad, sy(y))
    ctx.lineTo(w - pad, sy(y))
    ctx.stroke()
    ctx.setLineDash([])
    ctx.fillStyle = '#b05050'
    ctx.fillText(label, w - pad + 2, sy(y) + 3)
  }
  limitLine(series.limits.T1wc, 'T1wc')
  limitLine(series.limits.T2wc, 'T2wc')

  const plot = (values: Array<number | null>, color: string) => {
    ctx.strokeStyle = color
    ctx.lineWidth = 1.6
    let drawing = false
    ctx.beginPath()
    values.forEach((v, i) => {
      if (v === null) {
        drawing = false // sentinel rows render as gaps
        return
      }
      const x = sx(series.l1[i])
      const y = sy(v)
      if (!drawing) {
        ctx.moveTo(x, y)
        drawing = true
      } else {
        ctx.lineTo(x, y)
      }
    })
    ctx.stroke()
  }
  plot(series.t1, '#3a6ea5')
  plot(series.t2, '#c88a2a')

  ctx.strokeStyle = '#888'
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad)
  ctx.fillStyle = '#555'
  ctx.fillText('L1 (cm)', w / 2 - 16, h - 8)
  ctx.save()
  ctx.translate(10, h / 2 + 24)
  ctx.rotate(-Math.PI / 2)
  ctx.fillText('torque (kg.cm)', 0, 0)
  ctx.restore()
}
