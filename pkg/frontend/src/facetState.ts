// Shareable explorer state: everything the result list depends on lives
// in the URL, so reloading or sharing a link restores the same view.

export interface FacetState {
  title: string | null;
  composer: string | null;
  key: string | null;
  genre: string | null;
  medium: string[];
  expandNarrower: boolean;
  offset: number;
}

export const EMPTY_STATE: FacetState = {
  title: null,
  composer: null,
  key: null,
  genre: null,
  medium: [],
  expandNarrower: false,
  offset: 0,
};

export function serializeFacetState(state: FacetState): string {
  const params = new URLSearchParams();
  if (state.title) params.set('title', state.title);
  if (state.composer) params.set('composer', state.composer);
  if (state.key) params.set('key', state.key);
  if (state.genre) params.set('genre', state.genre);
  for (const medium of state.medium) params.append('medium', medium);
  if (state.expandNarrower) params.set('expand_narrower', 'true');
  if (state.offset > 0) params.set('offset', String(state.offset));
  return params.toString();
}

export function parseFacetState(query: string): FacetState {
  const params = new URLSearchParams(query);
  const offset = Number(params.get('offset') ?? '0');
  return {
    title: params.get('title'),
    composer: params.get('composer'),
    key: params.get('key'),
    genre: params.get('genre'),
    medium: params.getAll('medium'),
    expandNarrower: params.get('expand_narrower') === 'true',
    offset: Number.isFinite(offset) && offset > 0 ? offset : 0,
  };
}

/** Query string for GET /expressions matching this state. */
export function facetQueryString(state: FacetState): string {
  return serializeFacetState(state);
}

export function withFilter(state: FacetState, facet: string, value: string): FacetState {
  const next: FacetState = { ...state, medium: [...state.medium], offset: 0 };
  if (facet === 'medium') {
    if (!next.medium.includes(value)) next.medium.push(value);
  } else if (facet === 'title' || facet === 'composer' || facet === 'key' || facet === 'genre') {
    next[facet] = value;
  }
  return next;
}

export function withoutFilter(state: FacetState, facet: string, value?: string): FacetState {
  const next: FacetState = { ...state, medium: [...state.medium], offset: 0 };
  if (facet === 'medium') {
    next.medium = value === undefined ? [] : next.medium.filter((m) => m !== value);
  } else if (facet === 'title' || facet === 'composer' || facet === 'key' || facet === 'genre') {
    next[facet] = null;
  }
  return next;
}

export function activeFilters(state: FacetState): { facet: string; value: string }[] {
  const out: { facet: string; value: string }[] = [];
  if (state.title) out.push({ facet: 'title', value: state.title });
  if (state.composer) out.push({ facet: 'composer', value: state.composer });
  if (state.key) out.push({ facet: 'key', value: state.key });
  if (state.genre) out.push({ facet: 'genre', value: state.genre });
  for (const medium of state.medium) out.push({ facet: 'medium', value: medium });
  return out;
}

export function facetStatesEqual(a: FacetState, b: FacetState): boolean {
  return serializeFacetState(a) === serializeFacetState(b);
}
