// Wire types mirroring the session service JSON schema. Every statistic the
// console renders comes from these payloads verbatim; the client never
// recomputes W values or bounds.

export type Status = "active" | "completed" | "alarmed";

export interface WireBounds {
  lcb: number | "-inf";
  ucb: number | "+inf";
  l1: number | null;
  l2: number | null;
}

export interface WireState {
  m: number;
  n1: number;
  s1: number;
  n2: number;
  s2: number;
  w1: number;
  w2: number;
}

export interface Recommendation {
  line: 1 | 2;
  pi1: number | null; // null during the blocked first pair
}

export interface HistoryRecord {
  line: 1 | 2;
  outcome: 0 | 1;
  w1: number;
  w2: number;
}

export interface SessionConfig {
  theta0: number;
  theta_star: number;
  gamma: number;
  n: number;
  alpha: number;
}

export interface Snapshot {
  id: string;
  status: Status;
  followed_policy: boolean;
  interim_excursion: boolean;
  state: WireState;
  bounds: WireBounds;
  recommendation: Recommendation | null;
  config: SessionConfig;
  history?: HistoryRecord[];
}

export interface OutcomeResponse {
  state: WireState;
  recommendation: Recommendation | null;
  status: Status;
  followed_policy: boolean;
  interim_excursion: boolean;
}

export interface PreviewBranch {
  pi1: number | null;
}

export interface Preview {
  pending: Recommendation | null;
  if_outcome: { "0": PreviewBranch | null; "1": PreviewBranch | null } | null;
}

// One plotted point: W statistics after unit m, as reported by the service.
export interface WPoint {
  m: number;
  w1: number;
  w2: number;
}
