import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, Client } from "../src/api.js";

function stubFetch(status: number, payload: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  vi.stubGlobal("fetch", (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return Promise.resolve({
      ok: status >= 200 && status < 300,
      status,
      json: () => Promise.resolve(payload),
    } as Response);
  });
  return calls;
}

afterEach(() => vi.unstubAllGlobals());

describe("service client", () => {
  it("uploads networks as raw documents", async () => {
    const calls = stubFetch(201, { id: "n1" });
    const client = new Client("http://box:1");
    const result = await client.uploadNetwork({ format_version: 1, variables: [], families: [] });
    expect(result.id).toBe("n1");
    expect(calls[0].url).toBe("http://box:1/networks");
    expect(calls[0].init?.method).toBe("POST");
  });

  it("encodes the beliefs selector", async () => {
    const calls = stubFetch(200, { horizon: 2, beliefs: [] });
    await new Client().getBeliefs("s1", "alive@2,loaded_gun");
    expect(calls[0].url).toBe("/sessions/s1/beliefs?vars=alive%402%2Cloaded_gun");
  });

  it("sends assertion batches with add and remove", async () => {
    const calls = stubFetch(200, { evidence_rank: 0, count: 1 });
    await new Client().putAssertions(
      "s1",
      [{ t: 0, var: "alive", value: "true", kind: "observe" }],
      [{ t: 2, var: "fired_gun", kind: "act" }],
    );
    const body = JSON.parse(calls[0].init?.body as string);
    expect(body.add).toHaveLength(1);
    expect(body.remove).toHaveLength(1);
    expect(calls[0].init?.method).toBe("PUT");
  });

  it("raises ApiError with status and body on failure", async () => {
    stubFetch(409, { detail: { message: "nope", conflict: ["alive@0"] } });
    const error = await new Client()
      .putAssertions("s1", [])
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect((error as ApiError).status).toBe(409);
    expect(((error as ApiError).body as any).detail.conflict).toEqual(["alive@0"]);
  });

  it("treats 204 as empty success", async () => {
    const calls = stubFetch(204, undefined);
    await new Client().deleteSession("s1");
    expect(calls[0].init?.method).toBe("DELETE");
  });
});
