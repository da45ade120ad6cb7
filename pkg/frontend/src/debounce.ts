// Latest-wins request gate: at most one request in flight; while one is
// running, newer arguments overwrite the pending slot and only the newest
// runs afterwards. Used for IK target drags and game-move clicks.

export class LatestWins<A, R> {
  private inFlight = false
  private pending: A | undefined
  private waiters: Array<(r: R | undefined) => void> = []

  constructor(private readonly run: (arg: A) => Promise<R>) {}

  get busy(): boolean {
    return this.inFlight
  }

  /**
   * Submit an argument. Resolves with the result of the newest submission
   * once the gate drains (dropped intermediate submissions resolve with
   * that same final result).
   */
  submit(arg: A): Promise<R | undefined> {
    this.pending = arg
    const promise = new Promise<R | undefined>((resolve) => {
      this.waiters.push(resolve)
    })
    if (!this.inFlight) {
      void this.drain()
    }
    return promise
  }

  private async drain(): Promise<void> {
    this.inFlight = true
    let last: R | undefined
    try {
      while (this.pending !== undefined) {
        const arg = this.pending
        this.pending = undefined
        try {
          last = await this.run(arg)
        } catch {
          last = undefined
        }
      }
    } finally {
      this.inFlight = false
      const waiters = this.waiters
      this.waiters = []
      for (const resolve of waiters) resolve(last)
    }
  }
}
