/** Monotonic ticket source for list loaders. A fetch takes a ticket up
 * front and applies its response only if the ticket is still the newest,
 * so a slow stale response can never clobber fresher state.
 */
export class SequenceGate {
  private latest = 0;

  begin(): number {
    return ++this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}
