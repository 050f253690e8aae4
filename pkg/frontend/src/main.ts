// Application shell: hash routing between the review queue and the
// faceted explorer, with all result state kept in the URL.

import { ApiClient } from './api.js';
import {
  EMPTY_STATE,
  FacetState,
  facetQueryString,
  parseFacetState,
  serializeFacetState,
  withFilter,
  withoutFilter,
} from './facetState.js';
import { buildConceptTree } from './hierarchy.js';
import {
  renderConceptPicker,
  renderDetail,
  renderFacetChips,
  renderMapping,
  renderResults,
  renderReviewQueue,
} from './render.js';
import { ReviewStore, StatusFilter } from './reviewStore.js';

const api = new ApiClient('');
const store = new ReviewStore(api);

const app = document.getElementById('app')!;

interface Route {
  view: 'review' | 'explore' | 'resource';
  arg: string;
}

function currentRoute(): Route {
  const hash = window.location.hash || '#/explore';
  const [path, query = ''] = hash.replace(/^#\//, '').split('?');
  if (path === 'review') return { view: 'review', arg: query };
  if (path?.startsWith('resource/')) {
    return { view: 'resource', arg: decodeURIComponent(path.slice('resource/'.length)) };
  }
  return { view: 'explore', arg: query };
}

function setExplorerState(state: FacetState): void {
  const query = serializeFacetState(state);
  window.location.hash = query ? `#/explore?${query}` : '#/explore';
}

// -- review view -----------------------------------------------------------------

function bindReviewEvents(): void {
  app.querySelectorAll<HTMLButtonElement>('.tab').forEach((tab) => {
    tab.addEventListener('click', () => {
      store.setFilter(tab.dataset.filter as StatusFilter);
      drawReview();
    });
  });
  app.querySelectorAll<HTMLElement>('.mapping').forEach((card) => {
    const source = card.dataset.source!;
    const target = card.dataset.target!;
    card.querySelector('[data-action="accept"]')?.addEventListener('click', async () => {
      await store.decide(source, target, 'accepted');
      drawReview();
    });
    card.querySelector('[data-action="reject"]')?.addEventListener('click', async () => {
      await store.decide(source, target, 'rejected');
      drawReview();
    });
  });
  const form = app.querySelector<HTMLFormElement>('#manual-form');
  form?.addEventListener('submit', async (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const ok = await store.addManual(String(data.get('source')), String(data.get('target')));
    if (ok) form.reset();
    drawReview();
  });
}

function drawReview(): void {
  const state = store.getState();
  app.innerHTML = `<h2>Alignment review</h2>${renderReviewQueue(store.visibleItems(), state.filter, state.error)}`;
  bindReviewEvents();
}

async function showReview(): Promise<void> {
  app.innerHTML = '<p class="empty">Loading review queue…</p>';
  try {
    await store.load();
    drawReview();
  } catch (error) {
    app.innerHTML = `<div class="error">Cannot load mappings: ${String(error)}</div>`;
  }
}

// -- explorer view ------------------------------------------------------------------

let pickersHtml = '';

async function loadPickers(): Promise<string> {
  if (pickersHtml) return pickersHtml;
  const sections: string[] = [];
  const wanted: [string, string][] = [
    ['genre', 'genres'],
    ['key', 'keys'],
    ['medium', 'instruments'],
  ];
  const names = await api.listVocabularies();
  for (const [facet, vocabName] of wanted) {
    if (!names.includes(vocabName)) continue;
    const vocab = await api.getVocabulary(vocabName);
    sections.push(
      `<details${facet === 'medium' ? ' open' : ''}><summary>${facet}</summary>${renderConceptPicker(
        facet,
        buildConceptTree(vocab),
      )}</details>`,
    );
  }
  pickersHtml = sections.join('\n');
  return pickersHtml;
}

function bindExplorerEvents(state: FacetState): void {
  app.querySelectorAll<HTMLElement>('[data-add-facet]').forEach((el) => {
    el.addEventListener('click', (event) => {
      event.preventDefault();
      setExplorerState(withFilter(state, el.dataset.addFacet!, el.dataset.value!));
    });
  });
  app.querySelectorAll<HTMLElement>('[data-remove-facet]').forEach((el) => {
    el.addEventListener('click', () =>
      setExplorerState(withoutFilter(state, el.dataset.removeFacet!, el.dataset.value)),
    );
  });
  app.querySelector<HTMLInputElement>('#expand-narrower')?.addEventListener('change', (event) => {
    setExplorerState({ ...state, expandNarrower: (event.target as HTMLInputElement).checked });
  });
  const search = app.querySelector<HTMLFormElement>('#title-search');
  search?.addEventListener('submit', (event) => {
    event.preventDefault();
    const value = String(new FormData(search).get('title') ?? '').trim();
    setExplorerState(value ? withFilter(state, 'title', value) : withoutFilter(state, 'title'));
  });
}

async function showExplorer(query: string): Promise<void> {
  const state = query ? parseFacetState(query) : EMPTY_STATE;
  app.innerHTML = '<p class="empty">Searching…</p>';
  try {
    const [pickers, page] = await Promise.all([
      loadPickers(),
      api.searchExpressions(facetQueryString(state)),
    ]);
    app.innerHTML = `
<h2>Expressions</h2>
<form id="title-search"><input name="title" placeholder="search titles" value="${state.title ?? ''}">
<button type="submit">filter</button></form>
${renderFacetChips(state)}
<div class="explorer">
  <aside>${pickers}</aside>
  <section id="results">${renderResults(page)}</section>
</div>`;
    bindExplorerEvents(state);
  } catch (error) {
    app.innerHTML = `<div class="error">Search failed: ${String(error)}</div>`;
  }
}

async function showResource(iri: string): Promise<void> {
  app.innerHTML = '<p class="empty">Loading…</p>';
  try {
    const detail = await api.getResource(iri);
    app.innerHTML = renderDetail(detail);
    app.querySelectorAll<HTMLElement>('[data-add-facet]').forEach((el) => {
      el.addEventListener('click', (event) => {
        event.preventDefault();
        setExplorerState(withFilter(EMPTY_STATE, el.dataset.addFacet!, el.dataset.value!));
      });
    });
  } catch (error) {
    app.innerHTML = `<div class="error">Cannot load resource: ${String(error)}</div>`;
  }
}

// -- router ---------------------------------------------------------------------------

async function route(): Promise<void> {
  document.querySelectorAll('nav.top a').forEach((a) => a.classList.remove('active'));
  const { view, arg } = currentRoute();
  document.querySelector(`nav.top a[data-view="${view === 'resource' ? 'explore' : view}"]`)?.classList.add('active');
  if (view === 'review') await showReview();
  else if (view === 'resource') await showResource(arg);
  else await showExplorer(arg);
}

window.addEventListener('hashchange', route);
void route();
