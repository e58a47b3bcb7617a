/**
 * What-if panel: build a hypothetical delta, compare the two branches the
 * service returns, then either promote the delta to real assertions or
 * discard it. The panel never touches the grid model; applying goes back
 * through the ordinary assertion path.
 */

import type { AssertionIn, BeliefEntry, RankDelta, WhatIfResponse } from "./api.js";

export interface DiffCell {
  node: string;
  value: string;
  before: string | null; // bucket in the base branch
  after: string | null; // bucket in the hypothetical branch
  delta: RankDelta;
  changed: boolean;
}

export interface WhatIfView {
  baseError: string | null;
  hypotheticalError: string | null;
  cells: DiffCell[];
  /** Nodes whose belief bucket moved anywhere. */
  changedNodes: string[];
}

function byNode(beliefs: BeliefEntry[] | undefined): Record<string, BeliefEntry> {
  const out: Record<string, BeliefEntry> = {};
  for (const b of beliefs ?? []) {
    out[b.node] = b;
  }
  return out;
}

export function buildDiffView(response: WhatIfResponse): WhatIfView {
  const base = byNode(response.base.beliefs);
  const hypothetical = byNode(response.hypothetical.beliefs);

  const cells: DiffCell[] = [];
  const changedNodes = new Set<string>();
  for (const diff of response.diffs ?? []) {
    for (const [value, delta] of Object.entries(diff.deltas)) {
      const before = base[diff.node]?.buckets[value] ?? null;
      const after = hypothetical[diff.node]?.buckets[value] ?? null;
      const changed = delta !== 0;
      if (changed) {
        changedNodes.add(diff.node);
      }
      cells.push({ node: diff.node, value, before, after, delta, changed });
    }
  }
  return {
    baseError: response.base.error ?? null,
    hypotheticalError: response.hypothetical.error ?? null,
    cells,
    changedNodes: [...changedNodes].sort(),
  };
}

export interface PendingWhatIf {
  delta: AssertionIn[];
  view: WhatIfView | null;
}

export function emptyWhatIf(): PendingWhatIf {
  return { delta: [], view: null };
}

export function addDelta(pending: PendingWhatIf, assertion: AssertionIn): PendingWhatIf {
  const delta = pending.delta.filter(
    (a) => !(a.t === assertion.t && a.var === assertion.var && a.kind === assertion.kind),
  );
  delta.push(assertion);
  return { delta, view: null };
}

export function withView(pending: PendingWhatIf, view: WhatIfView): PendingWhatIf {
  return { ...pending, view };
}

/** Discarding simply forgets the panel; the session was never touched. */
export function discard(_pending: PendingWhatIf): PendingWhatIf {
  return emptyWhatIf();
}

export function renderWhatIf(
  root: Element,
  pending: PendingWhatIf,
  handlers: { onRun(): void; onApply(): void; onDiscard(): void },
): void {
  root.innerHTML = "";
  const title = document.createElement("h3");
  title.textContent = "what-if";
  root.appendChild(title);

  const deltaList = document.createElement("ul");
  deltaList.className = "whatif-delta";
  for (const a of pending.delta) {
    const item = document.createElement("li");
    item.textContent = `${a.kind === "act" ? "do" : "observe"} ${a.var}@${a.t} = ${a.value}`;
    deltaList.appendChild(item);
  }
  root.appendChild(deltaList);

  for (const [label, handler] of [
    ["run", handlers.onRun],
    ["apply", handlers.onApply],
    ["discard", handlers.onDiscard],
  ] as const) {
    const btn = document.createElement("button");
    btn.className = `whatif-${label}`;
    btn.textContent = label;
    btn.addEventListener("click", handler);
    root.appendChild(btn);
  }

  if (pending.view) {
    root.appendChild(renderView(pending.view));
  }
}

function renderView(view: WhatIfView): Element {
  const wrap = document.createElement("div");
  wrap.className = "whatif-view";
  for (const [label, error] of [
    ["base", view.baseError],
    ["hypothetical", view.hypotheticalError],
  ] as const) {
    if (error) {
      const banner = document.createElement("div");
      banner.className = `banner whatif-error-${label}`;
      banner.textContent = `${label}: ${error}`;
      wrap.appendChild(banner);
    }
  }
  const table = document.createElement("table");
  table.className = "whatif-diff";
  for (const cell of view.cells.filter((c) => c.changed)) {
    const tr = document.createElement("tr");
    tr.setAttribute("data-node", cell.node);
    tr.setAttribute("data-value", cell.value);
    for (const text of [
      `${cell.node} = ${cell.value}`,
      cell.before ?? "-",
      "→",
      cell.after ?? "-",
      `Δ ${cell.delta}`,
    ]) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  wrap.appendChild(table);
  return wrap;
}
