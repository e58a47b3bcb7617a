/**
 * Grid view-model: pure data and pure transitions.
 *
 * The model holds exactly what the service said, keyed by node id. Cells
 * are repainted only from authoritative responses; nothing in this module
 * computes a rank or a bucket. That keeps the rendering honest: a bucket on
 * screen can always be traced back to a recorded service payload.
 */

import type { BeliefEntry, BeliefsResponse, NetworkDocument, VariableDecl } from "./api.js";

export interface GridState {
  horizon: number;
  /** First slice that carries action nodes (0 or 1). */
  actionsFromSlice: number;
  variables: VariableDecl[];
  showAux: boolean;
  cells: Record<string, BeliefEntry>;
  banner: string | null;
}

export interface RowSpec {
  /** Row label; either a domain variable or an auxiliary action row. */
  label: string;
  var: string;
  role: "state" | "action";
}

export function emptyGrid(
  doc: NetworkDocument,
  horizon: number,
  actionsFromSlice = 0,
): GridState {
  return {
    horizon,
    actionsFromSlice,
    variables: doc.variables,
    showAux: false,
    cells: {},
    banner: null,
  };
}

/** Replace cell contents with what the service just said. */
export function applyBeliefs(grid: GridState, response: BeliefsResponse): GridState {
  const cells = { ...grid.cells };
  for (const entry of response.beliefs) {
    cells[entry.node] = entry;
  }
  return { ...grid, horizon: response.horizon, cells, banner: null };
}

export function withBanner(grid: GridState, banner: string | null): GridState {
  return { ...grid, banner };
}

export function toggleAux(grid: GridState): GridState {
  return { ...grid, showAux: !grid.showAux };
}

/**
 * Rows to draw: one per domain variable, plus (behind the toggle) one
 * action row per controllable variable. Suppressor and inertia nodes stay
 * server-side machinery and are never fetched by the explorer.
 */
export function visibleRows(grid: GridState): RowSpec[] {
  const rows: RowSpec[] = [];
  for (const v of grid.variables) {
    rows.push({ label: v.name, var: v.name, role: "state" });
    if (grid.showAux && v.controllable) {
      rows.push({ label: `do ${v.name}`, var: v.name, role: "action" });
    }
  }
  return rows;
}

export function nodeId(variable: string, role: "state" | "action", t: number): string {
  return role === "action" ? `do_${variable}@${t}` : `${variable}@${t}`;
}

export function cellAt(
  grid: GridState,
  variable: string,
  role: "state" | "action",
  t: number,
): BeliefEntry | undefined {
  return grid.cells[nodeId(variable, role, t)];
}

export function slices(grid: GridState): number[] {
  return Array.from({ length: grid.horizon + 1 }, (_, t) => t);
}

/** Slices at which a row actually has a node. */
export function rowSlices(grid: GridState, role: "state" | "action"): number[] {
  return slices(grid).filter((t) => role === "state" || t >= grid.actionsFromSlice);
}

/** The vars= selector covering everything the grid may show. */
export function fetchSelector(grid: GridState): string | undefined {
  if (!grid.showAux) {
    return undefined; // default grid: all domain variables, every slice
  }
  const names: string[] = [];
  for (const row of visibleRows(grid)) {
    for (const t of rowSlices(grid, row.role)) {
      names.push(nodeId(row.var, row.role, t));
    }
  }
  return names.join(",");
}
