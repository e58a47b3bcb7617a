/**
 * Explorer wiring: one session per tab, repaint only from authoritative
 * service responses. The setup form uploads a network document, starts a
 * session at a chosen horizon, and hands over to the timeline grid.
 */

import { ApiError, AssertionIn, Client, ConflictBody } from "./api.js";
import { GridState, applyBeliefs, emptyGrid, fetchSelector, toggleAux, withBanner } from "./state.js";
import { CellIntent, renderGrid } from "./render.js";
import {
  PendingWhatIf,
  addDelta,
  buildDiffView,
  discard,
  emptyWhatIf,
  renderWhatIf,
  withView,
} from "./whatif.js";

class App {
  private client: Client;
  private sessionId: string | null = null;
  private grid: GridState | null = null;
  private pending: PendingWhatIf = emptyWhatIf();
  private whatIfMode = false;

  constructor(
    private gridRoot: Element,
    private panelRoot: Element,
    base = "",
  ) {
    this.client = new Client(base);
  }

  async start(documentText: string, horizon: number): Promise<void> {
    const doc = JSON.parse(documentText);
    const { id: networkId } = await this.client.uploadNetwork(doc);
    const { id: sessionId } = await this.client.createSession(networkId, horizon);
    this.sessionId = sessionId;
    this.grid = emptyGrid(doc, horizon);
    await this.refresh();
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId || !this.grid) return;
    const beliefs = await this.client.getBeliefs(
      this.sessionId,
      fetchSelector(this.grid),
    );
    this.grid = applyBeliefs(this.grid, beliefs);
    this.paint();
  }

  private paint(): void {
    if (!this.grid) return;
    renderGrid(this.gridRoot, this.grid, {
      onAssert: (intent, value) => void this.assertCell(intent, value),
      onClear: (intent) => void this.clearCell(intent),
      onToggleAux: () => void this.onToggleAux(),
    });
    renderWhatIf(this.panelRoot, this.pending, {
      onRun: () => void this.runWhatIf(),
      onApply: () => void this.applyWhatIf(),
      onDiscard: () => this.discardWhatIf(),
    });
  }

  private intentToAssertion(intent: CellIntent, value: string): AssertionIn {
    return {
      t: intent.t,
      var: intent.var,
      value,
      kind: intent.role === "action" ? "act" : "observe",
    };
  }

  async assertCell(intent: CellIntent, value: string): Promise<void> {
    if (!this.sessionId || !this.grid) return;
    const assertion = this.intentToAssertion(intent, value);
    if (this.whatIfMode) {
      this.pending = addDelta(this.pending, assertion);
      this.paint();
      return;
    }
    try {
      await this.client.putAssertions(this.sessionId, [assertion]);
    } catch (error) {
      // rejected atomically: surface the conflict, repaint nothing else
      this.grid = withBanner(this.grid, conflictMessage(error));
      this.paint();
      return;
    }
    await this.refresh();
  }

  async clearCell(intent: CellIntent): Promise<void> {
    if (!this.sessionId) return;
    await this.client.putAssertions(
      this.sessionId,
      [],
      [{ t: intent.t, var: intent.var, kind: intent.role === "action" ? "act" : "observe" }],
    );
    await this.refresh();
  }

  async onToggleAux(): Promise<void> {
    if (!this.grid) return;
    this.grid = toggleAux(this.grid);
    await this.refresh();
  }

  setWhatIfMode(on: boolean): void {
    this.whatIfMode = on;
    if (!on) {
      this.pending = emptyWhatIf();
    }
    this.paint();
  }

  async runWhatIf(): Promise<void> {
    if (!this.sessionId || this.pending.delta.length === 0) return;
    const response = await this.client.whatIf(this.sessionId, this.pending.delta);
    this.pending = withView(this.pending, buildDiffView(response));
    this.paint();
  }

  async applyWhatIf(): Promise<void> {
    if (!this.sessionId || this.pending.delta.length === 0) return;
    try {
      await this.client.putAssertions(this.sessionId, this.pending.delta);
    } catch (error) {
      if (this.grid) {
        this.grid = withBanner(this.grid, conflictMessage(error));
      }
      this.paint();
      return;
    }
    this.pending = emptyWhatIf();
    await this.refresh();
  }

  discardWhatIf(): void {
    this.pending = discard(this.pending);
    this.paint();
  }
}

export function conflictMessage(error: unknown): string {
  if (error instanceof ApiError && error.status === 409) {
    const body = error.body as ConflictBody;
    const conflict = body?.detail?.conflict ?? [];
    return `inconsistent with: ${conflict.join(", ")}`;
  }
  return error instanceof Error ? error.message : String(error);
}

export function boot(): void {
  const gridRoot = document.getElementById("grid");
  const panelRoot = document.getElementById("whatif");
  const form = document.getElementById("setup") as HTMLFormElement | null;
  const docInput = document.getElementById("network-doc") as HTMLTextAreaElement | null;
  const horizonInput = document.getElementById("horizon") as HTMLInputElement | null;
  const whatIfToggle = document.getElementById("whatif-mode") as HTMLInputElement | null;
  if (!gridRoot || !panelRoot || !form || !docInput || !horizonInput) {
    return;
  }
  const app = new App(gridRoot, panelRoot);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void app
      .start(docInput.value, Number(horizonInput.value))
      .catch((error) => window.alert(conflictMessage(error)));
  });
  whatIfToggle?.addEventListener("change", () => app.setWhatIfMode(whatIfToggle.checked));
}

if (typeof document !== "undefined" && document.getElementById("grid")) {
  boot();
}

export { App };
