/** Coalesces rapid slider movement into at most one in-flight mutation.
 *
 * Calls are debounced; while a send is in flight further requests are
 * queued (latest value wins) and dispatched only after the current one
 * settles. The send callback owns success/failure handling, including
 * snapping the control back on rejection.
 */
export class MutationGate {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlight = false;
  private queued: number | null = null;

  constructor(
    private readonly send: (value: number) => Promise<void>,
    private readonly delayMs: number = 150,
  ) {}

  request(value: number): void {
    this.queued = value;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.flush();
    }, this.delayMs);
  }

  get busy(): boolean {
    return this.inFlight;
  }

  private async flush(): Promise<void> {
    if (this.inFlight || this.queued === null) return;
    const value = this.queued;
    this.queued = null;
    this.inFlight = true;
    try {
      // Send owns its failures (snap-back, banners); a rejection here has
      // nowhere useful to go, so it must not jam the gate.
      await this.send(value);
    } catch {
      // deliberately dropped
    } finally {
      this.inFlight = false;
      if (this.queued !== null && this.timer === null) void this.flush();
    }
  }
}
