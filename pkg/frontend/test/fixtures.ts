import type { BeliefsResponse, NetworkDocument, WhatIfResponse } from "../src/api.js";

/** Recorded responses from the real service (scripts/record_ui_fixtures.py). */
import networkYspJson from "./fixtures/network_ysp.json";
import beliefsInitialJson from "./fixtures/beliefs_initial.json";
import beliefsAfterShotJson from "./fixtures/beliefs_after_shot.json";
import beliefsAfterWhatIfJson from "./fixtures/beliefs_after_whatif.json";
import whatIfSurvivalJson from "./fixtures/whatif_survival.json";
import conflict409Json from "./fixtures/conflict_409.json";

export const networkYsp = networkYspJson as unknown as NetworkDocument;
export const beliefsInitial = beliefsInitialJson as unknown as BeliefsResponse;
export const beliefsAfterShot = beliefsAfterShotJson as unknown as BeliefsResponse;
export const beliefsAfterWhatIf = beliefsAfterWhatIfJson as unknown as BeliefsResponse;
export const whatIfSurvival = whatIfSurvivalJson as unknown as WhatIfResponse;
export const conflict409 = conflict409Json as unknown as {
  detail: { message: string; conflict: string[] };
};
