/** Thin typed client for the route service. All nontrivial numbers the
 * explorer shows come from these responses; the client never computes
 * factors itself.
 */
import type {
  ActionLabel,
  ConfigDoc,
  ContrastDoc,
  ExplanationDocWire,
  FactorsDoc,
  HealthDoc,
  MapDoc,
  PolicyDoc,
} from "./types.js";

/** Service answered with a non-2xx status. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

/** Request never reached the service (network down, server gone). */
export class ConnectionError extends Error {
  constructor(cause: unknown) {
    super("service unreachable");
    this.name = "ConnectionError";
    this.cause = cause;
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

/** What the explorer needs from the service; ApiClient is the real one. */
export interface ServiceApi {
  health(): Promise<HealthDoc>;
  map(): Promise<MapDoc>;
  policy(): Promise<PolicyDoc>;
  factors(stateId: number): Promise<FactorsDoc>;
  explain(type: string, state?: number): Promise<ExplanationDocWire>;
  contrast(
    state: number,
    chosen: ActionLabel | string,
    alt: ActionLabel | string,
  ): Promise<ContrastDoc>;
  setAlpha(alpha: number): Promise<ConfigDoc>;
}

export class ApiClient implements ServiceApi {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string = "",
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (cause) {
      throw new ConnectionError(cause);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  health(): Promise<HealthDoc> {
    return this.request<HealthDoc>("/api/health");
  }

  map(): Promise<MapDoc> {
    return this.request<MapDoc>("/api/map");
  }

  policy(): Promise<PolicyDoc> {
    return this.request<PolicyDoc>("/api/policy");
  }

  factors(stateId: number): Promise<FactorsDoc> {
    return this.request<FactorsDoc>(`/api/states/${stateId}/factors`);
  }

  explain(type: string, state?: number): Promise<ExplanationDocWire> {
    return this.request<ExplanationDocWire>("/api/explain", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(state === undefined ? { type } : { type, state }),
    });
  }

  contrast(
    state: number,
    chosen: ActionLabel | string,
    alt: ActionLabel | string,
  ): Promise<ContrastDoc> {
    const query = new URLSearchParams({
      state: String(state),
      chosen: String(chosen),
      alt: String(alt),
    });
    return this.request<ContrastDoc>(`/api/contrast?${query}`);
  }

  setAlpha(alpha: number): Promise<ConfigDoc> {
    return this.request<ConfigDoc>("/api/config", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ alpha }),
    });
  }
}
