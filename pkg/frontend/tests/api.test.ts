import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, ConnectionError } from "../src/api.js";
import type { FetchLike } from "../src/api.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function recordingFetch(response: () => Response): { calls: Call[]; fetch: FetchLike } {
  const calls: Call[] = [];
  return {
    calls,
    fetch: async (url, init) => {
      calls.push({ url, init });
      return response();
    },
  };
}

describe("ApiClient", () => {
  it("joins the base url onto paths", async () => {
    const { calls, fetch } = recordingFetch(() => jsonResponse({ status: "ok" }));
    const client = new ApiClient("http://host:9", fetch);
    await client.health();
    expect(calls[0]!.url).toBe("http://host:9/api/health");
  });

  it("hits the documented read endpoints", async () => {
    const { calls, fetch } = recordingFetch(() => jsonResponse({}));
    const client = new ApiClient("", fetch);
    await client.map();
    await client.policy();
    await client.factors(10);
    expect(calls.map((call) => call.url)).toEqual([
      "/api/map",
      "/api/policy",
      "/api/states/10/factors",
    ]);
    expect(calls.every((call) => call.init?.method === undefined)).toBe(true);
  });

  it("posts explanation requests with optional focus", async () => {
    const { calls, fetch } = recordingFetch(() => jsonResponse({}));
    const client = new ApiClient("", fetch);
    await client.explain("selective");
    await client.explain("responsibility", 10);
    expect(calls[0]!.init?.method).toBe("POST");
    expect(calls[0]!.init?.body).toBe('{"type":"selective"}');
    expect(calls[1]!.init?.body).toBe('{"type":"responsibility","state":10}');
  });

  it("encodes contrast parameters in the query string", async () => {
    const { calls, fetch } = recordingFetch(() => jsonResponse({}));
    const client = new ApiClient("", fetch);
    await client.contrast(10, "east", "south");
    expect(calls[0]!.url).toBe("/api/contrast?state=10&chosen=east&alt=south");
  });

  it("puts alpha changes to the config endpoint", async () => {
    const { calls, fetch } = recordingFetch(() => jsonResponse({}));
    const client = new ApiClient("", fetch);
    await client.setAlpha(4.5);
    expect(calls[0]!.url).toBe("/api/config");
    expect(calls[0]!.init?.method).toBe("PUT");
    expect(calls[0]!.init?.body).toBe('{"alpha":4.5}');
  });

  it("raises ApiError with the service detail on non-2xx", async () => {
    const { fetch } = recordingFetch(() =>
      jsonResponse({ detail: "state 9 is not critical" }, 400),
    );
    const client = new ApiClient("", fetch);
    const error = await client.contrast(9, "east", "south").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(400);
    expect(error.detail).toBe("state 9 is not critical");
  });

  it("falls back to the status text for non-JSON errors", async () => {
    const fetch: FetchLike = async () =>
      new Response("boom", { status: 502, statusText: "Bad Gateway" });
    const client = new ApiClient("", fetch);
    const error = await client.map().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.detail).toBe("Bad Gateway");
  });

  it("wraps network failures as ConnectionError", async () => {
    const fetch: FetchLike = async () => {
      throw new TypeError("fetch failed");
    };
    const client = new ApiClient("", fetch);
    const error = await client.health().catch((e) => e);
    expect(error).toBeInstanceOf(ConnectionError);
  });
});
