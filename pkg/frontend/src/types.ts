/**
 * Typed mirrors of the audit service's JSON payloads.
 *
 * The UI never reshapes or recomputes these values; every number shown on
 * screen is read straight from a payload object.
 */

export interface TokenPayload {
  surface: string;
  normalized: string;
  is_stopword: boolean;
  pos: string;
  is_punct: boolean;
}

export interface DocumentPayload {
  raw: string;
  tokens: TokenPayload[];
  sentence_bounds: [number, number][];
}

export interface RelationPayload {
  kind: string;
  weight: number;
}

export interface SubstitutionPayload {
  position: number;
  original: string;
  replacement: string;
  relation: RelationPayload | null;
  provider: string;
}

export interface RejectedTrialPayload {
  substitution: SubstitutionPayload;
  reason: string;
}

export interface ResultPayload {
  original: DocumentPayload;
  altered: DocumentPayload;
  original_verdict: number[] | null;
  final_verdict: number[] | null;
  accepted: SubstitutionPayload[];
  rejected: RejectedTrialPayload[];
  queries: number;
  success: boolean;
  similarity_final: number;
  displacement: number;
  strict_success: boolean | null;
  applicable: boolean;
  aborted: boolean;
  abort_reason: string | null;
}

export interface GenerateResponse {
  job_id: string;
  queries: number;
  result: ResultPayload;
}

export interface ProbeEntryPayload {
  model_id: string;
  fidelity: number;
  applicable: number;
  strict_successes: number;
  queries: number;
}

export interface ProbeResponse {
  job_id: string;
  queries: number;
  entries: ProbeEntryPayload[];
  correlation: number | null;
  explanations: string[];
}

export interface ConfigPayload {
  delta: number;
  epsilon: number;
  m: number | null;
  mode: string;
  omega_t: number;
  provider: string;
  [key: string]: unknown;
}

export interface ErrorPayload {
  error: { field: string | null; message: string };
}

export type TargetPair = [word: string, opposite: string];

export interface ModelEndpoint {
  id: string;
  url: string;
}
