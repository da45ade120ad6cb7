// Websocket client for the /events animation channel.

import { isValidFrame } from './state'
import type { EventFrame } from './types'

export interface EventsCallbacks {
  onFrame: (frame: EventFrame) => void
  onPlanEnd?: (info: Record<string, unknown>) => void
  onDropped?: () => void
  onOnline?: (online: boolean) => void
}

export class EventsClient {
  private ws: WebSocket | null = null
  private session: string | null = null
  private closed = false
  private retryMs = 500

  constructor(private readonly url: string, private readonly callbacks: EventsCallbacks) {}

  connect(): void {
    this.closed = false
    this.open()
  }

  subscribe(session: string): void {
    this.session = session
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(JSON.stringify({ type: 'subscribe', session }))
    }
  }

  close(): void {
    this.closed = true
    this.ws?.close()
  }

  private open(): void {
    const ws = new WebSocket(this.url)
    this.ws = ws
    ws.onopen = () => {
      this.retryMs = 500
      this.callbacks.onOnline?.(true)
      if (this.session) {
        ws.send(JSON.stringify({ type: 'subscribe', session: this.session }))
      }
    }
    ws.onmessage = (event: MessageEvent) => {
      let payload: unknown
      try {
        payload = JSON.parse(event.data as string)
      } catch {
        this.callbacks.onDropped?.()
        return
      }
      const msg = payload as Record<string, unknown>
      if (msg.type === 'plan_end') {
        this.callbacks.onPlanEnd?.(msg)
        return
      }
      if (msg.type === 'subscribed' || msg.type === 'pong') return
      if (isValidFrame(payload)) {
        this.callbacks.onFrame(payload)
      } else {
        this.callbacks.onDropped?.()
      }
    }
    ws.onclose = () => {
      this.callbacks.onOnline?.(false)
      if (!this.closed) {
        setTimeout(() => this.open(), this.retryMs)
        this.retryMs = Math.min(this.retryMs * 2, 8000)
      }
    }
    ws.onerror = () => ws.close()
  }
}
