export const GRID_ROWS = 12;
export const GRID_COLS = 8;
export const GRID_CELLS = GRID_ROWS * GRID_COLS;

export interface TrainReport {
  epochs_run: number;
  final_mse: number;
  training_accuracy: number;
  wall_time_seconds: number;
  converged: boolean;
}

export interface TrainConfig {
  learning_rate: number;
  momentum: number;
  mse_threshold: number;
  max_epochs: number;
  rng_seed: number;
}

export interface SessionState {
  session_id: string;
  status: "idle" | "training" | "done" | "canceled" | "error";
  pattern_count: number;
  per_digit_counts: number[];
  has_network: boolean;
  config: TrainConfig;
  report: TrainReport | null;
  error: string | null;
}

export interface StoredPattern {
  cells: string; // 96 chars of 0/1, row-major
  label: number | null;
}

export interface PatternListResponse {
  patterns: StoredPattern[];
  per_digit_counts: number[];
}

export interface AddPatternResponse {
  added: boolean;
  pattern_count: number;
  per_digit_counts: number[];
}

export interface TrainStatus {
  status: SessionState["status"];
  report: TrainReport | null;
  error: string | null;
}

export interface RecognizeResponse {
  label: number;
  probs: number[];
}

export interface ProjectionResponse {
  points: [number, number][];
  labels: (number | null)[];
  explained_variance: [number, number];
  degenerate: boolean;
  augmented: boolean;
}

export interface TesterFiles {
  models: string[];
  patterns: string[];
}

export interface PerModelAccuracy {
  model: string;
  accuracy: number;
}

export interface PerPatternResult {
  model: string;
  pattern_index: number;
  label: number;
  predicted: number;
  correct: boolean;
  probs: number[];
}

export interface EvalResponse {
  per_model: PerModelAccuracy[];
  per_pattern: PerPatternResult[];
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
