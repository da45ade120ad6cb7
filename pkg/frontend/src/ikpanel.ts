// IK result panel: joints, residual, iteration count and the residual
// trace sparkline, all straight from the service response.

import type { IKResponse } from './types'

export class IkPanel {
  private readonly joints: HTMLElement
  private readonly summary: HTMLElement
  private readonly spark: HTMLCanvasElement

  constructor(container: HTMLElement) {
    this.summary = document.createElement('div')
    this.summary.className = 'ik-summary'
    this.joints = document.createElement('div')
    this.joints.className = 'ik-joints'
    this.spark = document.createElement('canvas')
    this.spark.width = 220
    this.spark.height = 48
    container.appendChild(this.summary)
    container.appendChild(this.joints)
    container.appendChild(this.spark)
  }

  render(result: IKResponse): void {
    const state = result.converged ? 'converged' : 'unreachable'
    this.summary.textContent =
      `${state} | ${result.iterations} iterations | residual ${result.residual.toExponential(2)} cm` +
      (result.singular_wrist ? ' | wrist singular' : '')
    this.summary.classList.toggle('bad', !result.converged)
    this.joints.textContent =
      'joints: ' + result.joints.map((v) => v.toFixed(3)).join(', ')
    this.drawTrace(result.trace)
  }

  private drawTrace(trace: number[]): void {
    const ctx = this.spark.getContext('2d')
    if (!ctx) return
    const w = this.spark.width
    const h = this.spark.height
    ctx.clearRect(0, 0, w, h)
    if (trace.length === 0) return
    const max = Math.max(...trace, 1e-12)
    ctx.strokeStyle = '#3a6ea5'
    ctx.beginPath()
    trace.forEach((value, i) => {
      const x = (i / Math.max(trace.length - 1, 1)) * (w - 4) + 2
      const y = h - 4 - (value / max) * (h - 8)
      if (i === 0) ctx.moveTo(x, y)
      else ctx.lineTo(x, y)
    })
    ctx.stroke()
  }
}
