import type {
  AddPatternResponse,
  ApiErrorBody,
  EvalResponse,
  PatternListResponse,
  ProjectionResponse,
  RecognizeResponse,
  SessionState,
  TesterFiles,
  TrainConfig,
  TrainStatus,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

/**
 * Typed client for the workbench JSON API under /api/v1. All numbers are
 * passed through untouched: the UI never recomputes probabilities,
 * projections, or accuracies.
 */
export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.base}/api/v1${path}`, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "http-error";
      let message = `${response.status} ${response.statusText}`;
      try {
        const payload = (await response.json()) as Partial<ApiErrorBody>;
        if (payload.error) {
          code = payload.error.code;
          message = payload.error.message;
        }
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(code, message, response.status);
    }
    return (await response.json()) as T;
  }

  createSession(): Promise<SessionState> {
    return this.request("POST", "/sessions");
  }

  getSession(sessionId: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  listPatterns(sessionId: string): Promise<PatternListResponse> {
    return this.request("GET", `/sessions/${sessionId}/patterns`);
  }

  addPattern(sessionId: string, cells: string, label: number): Promise<AddPatternResponse> {
    return this.request("POST", `/sessions/${sessionId}/patterns`, { cells, label });
  }

  deletePattern(sessionId: string, index: number): Promise<AddPatternResponse> {
    return this.request("DELETE", `/sessions/${sessionId}/patterns/${index}`);
  }

  clearPatterns(sessionId: string): Promise<AddPatternResponse> {
    return this.request("DELETE", `/sessions/${sessionId}/patterns`);
  }

  savePatterns(sessionId: string, path: string): Promise<{ path: string; pattern_count: number }> {
    return this.request("POST", `/sessions/${sessionId}/patterns/save`, { path });
  }

  loadPatterns(sessionId: string, path: string): Promise<AddPatternResponse> {
    return this.request("POST", `/sessions/${sessionId}/patterns/load`, { path });
  }

  startTraining(sessionId: string, overrides: Partial<TrainConfig> = {}): Promise<{ status: string }> {
    return this.request("POST", `/sessions/${sessionId}/train`, overrides);
  }

  trainStatus(sessionId: string): Promise<TrainStatus> {
    return this.request("GET", `/sessions/${sessionId}/train/status`);
  }

  cancelTraining(sessionId: string): Promise<{ status: string }> {
    return this.request("POST", `/sessions/${sessionId}/train/cancel`);
  }

  recognize(sessionId: string, cells: string): Promise<RecognizeResponse> {
    return this.request("POST", `/sessions/${sessionId}/recognize`, { cells });
  }

  projection(sessionId: string, augment: boolean): Promise<ProjectionResponse> {
    return this.request("GET", `/sessions/${sessionId}/projection?augment=${augment}`);
  }

  saveModel(sessionId: string, path: string): Promise<{ path: string }> {
    return this.request("POST", `/sessions/${sessionId}/model/save`, { path });
  }

  loadModel(sessionId: string, path: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${sessionId}/model/load`, { path });
  }

  testerFiles(): Promise<TesterFiles> {
    return this.request("GET", "/tester/files");
  }

  testerEvaluate(models: string[], patterns: string): Promise<EvalResponse> {
    return this.request("POST", "/tester/evaluate", { models, patterns });
  }
}

/** Poll training status every `intervalMs` until it leaves "training". */
export async function waitForTraining(
  api: ApiClient,
  sessionId: string,
  intervalMs = 500,
  timeoutMs = 600_000,
): Promise<TrainStatus> {
  const startedAt = Date.now();
  for (;;) {
    const status = await api.trainStatus(sessionId);
    if (status.status !== "training") {
      return status;
    }
    if (Date.now() - startedAt > timeoutMs) {
      throw new Error("training did not finish in time");
    }
    await new Promise((resolve) => setTimeout(resolve, intervalMs));
  }
}
