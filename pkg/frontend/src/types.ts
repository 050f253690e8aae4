// Shapes returned by the cantor service API.

export type MappingStatus = 'candidate' | 'accepted' | 'rejected' | 'manual';

export interface Mapping {
  source: string;
  target: string;
  confidence: number;
  status: MappingStatus;
  provenance: 'automatic' | 'expert';
  relation: string;
  source_labels: Record<string, string>;
  target_labels: Record<string, string>;
  source_broader: string[];
  target_broader: string[];
}

export interface MappingList {
  total: number;
  items: Mapping[];
}

export interface ExpressionSummary {
  iri: string;
  title: string | null;
  composer: string | null;
}

export interface ExpressionPage {
  total: number;
  offset: number;
  limit: number;
  items: ExpressionSummary[];
}

export interface ConceptValue {
  label: string;
  iri: string | null;
}

export interface TimelineEntry {
  year: string | null;
  label: string;
  place: string | null;
  note: string | null;
}

export interface ResourceDetail {
  iri: string;
  types: string[];
  titles: string[];
  composers: string[];
  key: ConceptValue | null;
  genres: ConceptValue[];
  opus: string | null;
  catalog_number: string | null;
  casting: ConceptValue[];
  timeline: TimelineEntry[];
}

export interface Concept {
  iri: string;
  pref_labels: Record<string, string>;
  alt_labels: [string, string][];
  broader: string[];
}

export interface Vocabulary {
  name: string;
  scheme: string;
  concepts: Concept[];
}

export interface ApiError {
  status: number;
  detail: string;
}
