import { describe, expect, it } from "vitest";

import {
  addDelta,
  buildDiffView,
  discard,
  emptyWhatIf,
  renderWhatIf,
  withView,
} from "../src/whatif.js";
import { applyBeliefs, emptyGrid } from "../src/state.js";
import { beliefsAfterShot, beliefsAfterWhatIf, networkYsp, whatIfSurvival } from "./fixtures.js";

describe("what-if diff view", () => {
  it("highlights the unloaded gun from the recorded comparison", () => {
    const view = buildDiffView(whatIfSurvival);
    expect(view.baseError).toBeNull();
    expect(view.hypotheticalError).toBeNull();
    expect(view.changedNodes).toContain("loaded_gun@2");

    const loaded = view.cells.find(
      (c) => c.node === "loaded_gun@2" && c.value === "true",
    )!;
    // buckets on both sides come straight from the service branches
    expect(loaded.before).toBe("plausible");
    expect(loaded.after).toBe("surprising");
    expect(loaded.delta).toBe(1);
  });

  it("keeps unchanged cells out of the highlighted set", () => {
    const view = buildDiffView(whatIfSurvival);
    for (const cell of view.cells) {
      if (!cell.changed) {
        expect(cell.delta).toBe(0);
      }
    }
  });

  it("delta list replaces entries for the same slot", () => {
    let pending = emptyWhatIf();
    pending = addDelta(pending, { t: 2, var: "alive", value: "true", kind: "observe" });
    pending = addDelta(pending, { t: 2, var: "alive", value: "false", kind: "observe" });
    expect(pending.delta).toHaveLength(1);
    expect(pending.delta[0].value).toBe("false");
  });

  it("discard forgets the panel without touching grid state", () => {
    const grid = applyBeliefs(emptyGrid(networkYsp, 2), beliefsAfterShot);
    let pending = addDelta(emptyWhatIf(), {
      t: 2,
      var: "alive",
      value: "true",
      kind: "observe",
    });
    pending = withView(pending, buildDiffView(whatIfSurvival));

    const snapshot = JSON.stringify(grid);
    pending = discard(pending);
    expect(pending).toEqual(emptyWhatIf());
    expect(JSON.stringify(grid)).toBe(snapshot);
  });

  it("the recorded follow-up fetch proves the session was not mutated", () => {
    // the service recorded identical beliefs before and after the what-if
    expect(beliefsAfterWhatIf).toEqual(beliefsAfterShot);
  });

  it("renders only changed cells in the diff table", () => {
    const root = document.createElement("div");
    const pending = withView(
      addDelta(emptyWhatIf(), { t: 2, var: "alive", value: "true", kind: "observe" }),
      buildDiffView(whatIfSurvival),
    );
    renderWhatIf(root, pending, {
      onRun() {},
      onApply() {},
      onDiscard() {},
    });
    const rows = root.querySelectorAll("table.whatif-diff tr");
    expect(rows.length).toBeGreaterThan(0);
    const nodes = new Set(
      Array.from(rows).map((r) => r.getAttribute("data-node")),
    );
    expect(nodes.has("loaded_gun@2")).toBe(true);
  });
});
