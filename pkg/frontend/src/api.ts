// Typed client for the cantor service. The fetch implementation is
// injectable so stores can be tested against a scripted transport.

import type {
  ExpressionPage,
  Mapping,
  MappingList,
  MappingStatus,
  ResourceDetail,
  Vocabulary,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (body.detail !== undefined) {
      detail = typeof body.detail === 'string' ? body.detail : JSON.stringify(body.detail);
    }
  } catch {
    // non-JSON error body: keep the status text
  }
  throw new ApiRequestError(response.status, detail);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  listMappings(status?: MappingStatus): Promise<MappingList> {
    const suffix = status ? `?status=${encodeURIComponent(status)}` : '';
    return this.getJson<MappingList>(`/mappings${suffix}`);
  }

  async decideMapping(source: string, target: string, decision: 'accepted' | 'rejected'): Promise<Mapping> {
    const params = new URLSearchParams({ source, target });
    const response = await this.fetchImpl(`${this.baseUrl}/mappings?${params.toString()}`, {
      method: 'PATCH',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ decision }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as Mapping;
  }

  async addManualMapping(source: string, target: string): Promise<Mapping> {
    const response = await this.fetchImpl(`${this.baseUrl}/mappings`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ source, target }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as Mapping;
  }

  async exportMappings(format: 'nt' | 'tsv'): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/export/mappings?format=${format}`);
    if (!response.ok) await parseError(response);
    return response.text();
  }

  searchExpressions(query: string): Promise<ExpressionPage> {
    return this.getJson<ExpressionPage>(`/expressions${query ? `?${query}` : ''}`);
  }

  getResource(iri: string): Promise<ResourceDetail> {
    return this.getJson<ResourceDetail>(`/resources/${iri}`);
  }

  listVocabularies(): Promise<string[]> {
    return this.getJson<string[]>('/vocabularies');
  }

  getVocabulary(name: string): Promise<Vocabulary> {
    return this.getJson<Vocabulary>(`/vocabularies/${encodeURIComponent(name)}`);
  }
}
