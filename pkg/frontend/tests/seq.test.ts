import { describe, expect, it } from "vitest";

import { SequenceGate } from "../src/seq";

describe("sequence gate", () => {
  it("only the newest ticket is current", () => {
    const gate = new SequenceGate();
    const first = gate.begin();
    expect(gate.isCurrent(first)).toBe(true);
    const second = gate.begin();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(second)).toBe(true);
  });

  it("a stale response resolving late is discarded", async () => {
    const gate = new SequenceGate();
    let shown = "";

    async function search(term: string, delayMs: number): Promise<void> {
      const ticket = gate.begin();
      await new Promise((resolve) => setTimeout(resolve, delayMs));
      if (!gate.isCurrent(ticket)) return; // stale: a newer search started
      shown = term;
    }

    // the older query is slower and must not clobber the newer result
    await Promise.all([search("pop", 50), search("poplar", 5)]);
    expect(shown).toBe("poplar");
  });
});
