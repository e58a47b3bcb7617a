/**
 * DOM painting for the timeline grid. Rendering is one-way: handlers
 * report intents (assert, clear, toggle) and the caller repaints with a
 * fresh model built from service responses. No optimistic updates.
 */

import type { BeliefEntry } from "./api.js";
import { GridState, RowSpec, cellAt, rowSlices, slices, visibleRows } from "./state.js";

export interface CellIntent {
  var: string;
  role: "state" | "action";
  t: number;
  /** Values offered for assertion in the cell menu. */
  values: string[];
  asserted: string | null;
}

export interface GridHandlers {
  onAssert(intent: CellIntent, value: string): void;
  onClear(intent: CellIntent): void;
  onToggleAux(): void;
}

const BUCKET_CLASS: Record<string, string> = {
  plausible: "bucket-plausible",
  surprising: "bucket-surprising",
  very_surprising: "bucket-very-surprising",
  impossible: "bucket-impossible",
};

export function renderGrid(root: Element, grid: GridState, handlers: GridHandlers): void {
  root.innerHTML = "";

  if (grid.banner) {
    const banner = el("div", "banner");
    banner.textContent = grid.banner;
    root.appendChild(banner);
  }

  const table = el("table", "timeline");
  const head = el("tr");
  head.appendChild(el("th"));
  for (const t of slices(grid)) {
    const th = el("th");
    th.textContent = `t=${t}`;
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const row of visibleRows(grid)) {
    table.appendChild(renderRow(grid, row, handlers));
  }
  root.appendChild(table);

  const toggle = el("button", "aux-toggle");
  toggle.textContent = grid.showAux ? "hide action rows" : "show action rows";
  toggle.addEventListener("click", () => handlers.onToggleAux());
  root.appendChild(toggle);

  root.appendChild(renderLegend());
}

function renderRow(grid: GridState, row: RowSpec, handlers: GridHandlers): Element {
  const tr = el("tr", row.role === "action" ? "row-action" : "row-state");
  const label = el("th");
  label.textContent = row.label;
  tr.appendChild(label);

  const live = new Set(rowSlices(grid, row.role));
  for (const t of slices(grid)) {
    if (!live.has(t)) {
      tr.appendChild(el("td", "cell cell-absent"));
      continue;
    }
    tr.appendChild(renderCell(grid, row, t, handlers));
  }
  return tr;
}

function cellValues(grid: GridState, row: RowSpec): string[] {
  const decl = grid.variables.find((v) => v.name === row.var);
  const values = decl ? [...decl.values] : [];
  if (row.role === "action") {
    values.push("idle");
  }
  return values;
}

function renderCell(
  grid: GridState,
  row: RowSpec,
  t: number,
  handlers: GridHandlers,
): Element {
  const entry = cellAt(grid, row.var, row.role, t);
  const td = el("td", "cell");
  td.setAttribute("data-node", `${row.role === "action" ? "do_" : ""}${row.var}@${t}`);

  if (entry) {
    td.appendChild(renderBelief(entry));
    if (entry.asserted) {
      const badge = el("span", `assert-badge assert-${entry.asserted.kind}`);
      badge.textContent =
        entry.asserted.kind === "act"
          ? `do ${entry.asserted.value}`
          : `saw ${entry.asserted.value}`;
      td.appendChild(badge);
      td.classList.add("cell-asserted");
    }
  } else {
    td.appendChild(el("span", "cell-pending"));
  }

  const intent: CellIntent = {
    var: row.var,
    role: row.role,
    t,
    values: cellValues(grid, row),
    asserted: entry?.asserted?.value ?? null,
  };
  td.appendChild(renderMenu(intent, handlers));
  return td;
}

function renderBelief(entry: BeliefEntry): Element {
  const wrap = el("span", "belief");
  for (const [value, bucket] of Object.entries(entry.buckets)) {
    const chip = el("span", `chip ${BUCKET_CLASS[bucket] ?? ""}`);
    chip.setAttribute("data-value", value);
    chip.setAttribute("data-bucket", bucket);
    chip.textContent = entry.believed === value ? `${value}!` : value;
    if (entry.believed === value) {
      chip.classList.add("chip-believed");
    }
    wrap.appendChild(chip);
  }
  return wrap;
}

function renderMenu(intent: CellIntent, handlers: GridHandlers): Element {
  const menu = el("span", "cell-menu");
  for (const value of intent.values) {
    const btn = el("button", "menu-assert");
    btn.textContent = intent.role === "action" ? `do ${value}` : `=${value}`;
    btn.addEventListener("click", () => handlers.onAssert(intent, value));
    menu.appendChild(btn);
  }
  if (intent.asserted !== null) {
    const clear = el("button", "menu-clear");
    clear.textContent = "clear";
    clear.addEventListener("click", () => handlers.onClear(intent));
    menu.appendChild(clear);
  }
  return menu;
}

function renderLegend(): Element {
  const legend = el("div", "legend");
  const entries: [string, string][] = [
    ["plausible", "rank 0: a serious possibility"],
    ["surprising", "rank 1-2: somewhat surprising"],
    ["very_surprising", "rank 3+: very surprising"],
    ["impossible", "rank inf: ruled out"],
  ];
  for (const [bucket, text] of entries) {
    const item = el("span", `legend-item ${BUCKET_CLASS[bucket]}`);
    item.textContent = text;
    legend.appendChild(item);
  }
  return legend;
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  return node;
}
