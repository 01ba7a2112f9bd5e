// Shapes of the /v1 JSON payloads this app consumes.

/** On-disk artifacts (and GET /v1/themes) wrap their payload in this. */
export interface ArtifactEnvelope<T> {
  format: string;
  version: number;
  sha256: string;
  payload: T;
}

export interface ThemeRecord {
  theme_id: number;
  label: string;
  top_terms: [string, number][];
  cluster: number;
  q: number;
  r: number;
  color: string;
}

export interface ClusterRecord {
  cluster_id: number;
  color: string;
  centroid: [number, number];
  themes: number[];
}

export interface MapPayload {
  model_hash: string | null;
  tau: number;
  k: number;
  n_clusters: number;
  empty_themes: number[];
  themes: ThemeRecord[];
  clusters: ClusterRecord[];
  merges: [number, number, number][];
  kept_merges: number;
  similarity: number[][];
}

export interface WheelSegment {
  chunk_index: number;
  theme_id: number;
  weight: number;
  color: string | null;
  trace_only: boolean;
}

export interface WheelPayload {
  doc_id: string;
  variant: 'multi' | 'single';
  theme_id: number | null;
  segments: WheelSegment[];
}

export interface RankedPaper {
  doc_id: string;
  title: string | null;
  relevance_percent: number;
  wheel: WheelPayload;
}

export interface ThemeDetail {
  theme: ThemeRecord;
  papers: RankedPaper[];
}

export interface PaperRecord {
  doc_id: string;
  title: string | null;
  chunk_count: number;
}

export interface StrategyEntryPayload {
  doc_id: string;
  rank: number;
  note: string;
  segments: [number, number][];
}

export interface SessionPayload {
  session_id: string;
  created: string;
  updated: string;
  selection: string[];
  strategy: StrategyEntryPayload[];
  titles_revealed: boolean;
  config: Record<string, unknown>;
}

export interface ThemeProvenance {
  theme_id: number;
  witnesses: [string, number][];
}

export interface ExcerptPayload extends MapPayload {
  selection: string[];
  theta_min: number;
  provenance: ThemeProvenance[];
}

export interface ExcerptBody {
  excerpt: ExcerptPayload;
  wheels: WheelPayload[];
}

export interface AboutPayload {
  version: string;
  k: number;
  n_papers: number;
  chunk_count: number;
  n_clusters: number;
  vocab_hash: string;
  model_hash: string;
  map_hash: string;
  max_selection: number;
  theta_min: number;
  tau: number;
}
