import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { ReviewStore } from '../src/reviewStore.js';
import type { Mapping } from '../src/types.js';

const A = 'http://vocab.example.org/instruments/';
const B = 'http://thesaurus.example.net/mop/';

function mapping(source: string, target: string, confidence: number, status: Mapping['status'] = 'candidate'): Mapping {
  return {
    source,
    target,
    confidence,
    status,
    provenance: status === 'manual' ? 'expert' : 'automatic',
    relation: 'exactMatch',
    source_labels: {},
    target_labels: {},
    source_broader: [],
    target_broader: [],
  };
}

/** In-memory stand-in for the service's mapping endpoints. */
class FakeService {
  items: Mapping[];
  failNext = false;

  constructor(items: Mapping[]) {
    this.items = items.map((m) => ({ ...m }));
  }

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    if (this.failNext) {
      this.failNext = false;
      return Response.json({ detail: 'simulated outage' }, { status: 500 });
    }
    const url = new URL(input, 'http://service.test');
    if (url.pathname === '/mappings' && (init?.method ?? 'GET') === 'GET') {
      const sorted = [...this.items].sort((a, b) => b.confidence - a.confidence);
      return Response.json({ total: sorted.length, items: sorted });
    }
    if (url.pathname === '/mappings' && init?.method === 'PATCH') {
      const source = url.searchParams.get('source');
      const target = url.searchParams.get('target');
      const found = this.items.find((m) => m.source === source && m.target === target);
      if (!found) return Response.json({ detail: 'no such mapping' }, { status: 404 });
      const { decision } = JSON.parse(String(init?.body)) as { decision: Mapping['status'] };
      found.status = decision;
      return Response.json(found);
    }
    if (url.pathname === '/mappings' && init?.method === 'POST') {
      const { source, target } = JSON.parse(String(init?.body)) as { source: string; target: string };
      if (this.items.some((m) => m.source === source && m.target === target)) {
        return Response.json({ detail: 'mapping already exists' }, { status: 409 });
      }
      const created = mapping(source, target, 1.0, 'manual');
      this.items.push(created);
      return Response.json(created, { status: 201 });
    }
    return Response.json({ detail: 'unhandled route' }, { status: 500 });
  };
}

describe('review store', () => {
  let service: FakeService;
  let store: ReviewStore;

  beforeEach(() => {
    service = new FakeService([
      mapping(A + 'violin', B + 'violin', 1.0),
      mapping(A + 'violoncello', B + 'cello', 0.9),
      mapping(A + 'flute', B + 'flute', 0.95),
    ]);
    store = new ReviewStore(new ApiClient('http://service.test', service.fetch));
  });

  it('queue ordering matches the service ordering (confidence desc)', async () => {
    await store.load();
    const confidences = store.visibleItems().map((m) => m.confidence);
    expect(confidences).toEqual([1.0, 0.95, 0.9]);
  });

  it('accept moves the item into the accepted view', async () => {
    await store.load();
    const ok = await store.decide(A + 'violin', B + 'violin', 'accepted');
    expect(ok).toBe(true);
    store.setFilter('accepted');
    expect(store.visibleItems().map((m) => m.source)).toEqual([A + 'violin']);
    store.setFilter('candidate');
    expect(store.visibleItems()).toHaveLength(2);
  });

  it('rolls back and surfaces the error when the service fails', async () => {
    await store.load();
    service.failNext = true;
    const ok = await store.decide(A + 'violin', B + 'violin', 'rejected');
    expect(ok).toBe(false);
    expect(store.getState().error).toContain('simulated outage');
    const item = store.getState().items.find((m) => m.source === A + 'violin');
    expect(item?.status).toBe('candidate'); // optimistic change undone
  });

  it('duplicate manual mapping conflicts and leaves the queue unchanged', async () => {
    await store.load();
    const before = store.getState().items.length;
    const ok = await store.addManual(A + 'violin', B + 'violin');
    expect(ok).toBe(false);
    expect(store.getState().error).toMatch(/conflict/i);
    expect(store.getState().items).toHaveLength(before);
  });

  it('manual mapping lands with expert provenance and confidence 1.0', async () => {
    await store.load();
    const ok = await store.addManual(A + 'voice', B + 'harp');
    expect(ok).toBe(true);
    store.setFilter('manual');
    const [item] = store.visibleItems();
    expect(item?.provenance).toBe('expert');
    expect(item?.confidence).toBe(1.0);
  });

  it('unknown pair decision returns 404 and rolls back', async () => {
    await store.load();
    const ok = await store.decide(A + 'nope', B + 'nope', 'accepted');
    expect(ok).toBe(false);
    expect(store.getState().error).toMatch(/not found/i);
  });
});
