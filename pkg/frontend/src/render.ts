// Pure HTML renderers. No DOM access here: every function maps state to
// a string, which keeps the views testable without a browser.

import type { FacetState } from './facetState.js';
import { activeFilters } from './facetState.js';
import type { ConceptNode } from './hierarchy.js';
import { flattenTree } from './hierarchy.js';
import type { ExpressionPage, Mapping, ResourceDetail } from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

function shortName(iri: string): string {
  const parts = iri.replace(/\/+$/, '').split('/');
  return parts[parts.length - 1] ?? iri;
}

function labelList(labels: Record<string, string>): string {
  const entries = Object.entries(labels);
  if (entries.length === 0) return '';
  return entries
    .map(([lang, label]) => `<span class="label"><em>${escapeHtml(lang)}</em> ${escapeHtml(label)}</span>`)
    .join(' ');
}

// -- review queue -------------------------------------------------------------

export function renderMapping(mapping: Mapping): string {
  const sourceContext = mapping.source_broader.length
    ? `<div class="context">&uarr; ${mapping.source_broader.map(escapeHtml).join(' &rsaquo; ')}</div>`
    : '';
  const targetContext = mapping.target_broader.length
    ? `<div class="context">&uarr; ${mapping.target_broader.map(escapeHtml).join(' &rsaquo; ')}</div>`
    : '';
  return `
<article class="mapping" data-source="${escapeHtml(mapping.source)}" data-target="${escapeHtml(mapping.target)}">
  <div class="side">
    <h4>${escapeHtml(shortName(mapping.source))}</h4>
    ${labelList(mapping.source_labels)}
    ${sourceContext}
    <code>${escapeHtml(mapping.source)}</code>
  </div>
  <div class="side">
    <h4>${escapeHtml(shortName(mapping.target))}</h4>
    ${labelList(mapping.target_labels)}
    ${targetContext}
    <code>${escapeHtml(mapping.target)}</code>
  </div>
  <div class="verdict">
    <span class="chip chip-${mapping.status}">${mapping.status}</span>
    <span class="confidence">${mapping.confidence.toFixed(3)}</span>
    <button data-action="accept">accept</button>
    <button data-action="reject">reject</button>
  </div>
</article>`;
}

export function renderReviewQueue(items: Mapping[], filter: string, error: string | null): string {
  const banner = error ? `<div class="error" role="alert">${escapeHtml(error)}</div>` : '';
  const tabs = ['candidate', 'accepted', 'rejected', 'manual', 'all']
    .map(
      (status) =>
        `<button class="tab${status === filter ? ' active' : ''}" data-filter="${status}">${status}</button>`,
    )
    .join('');
  const body = items.length
    ? items.map(renderMapping).join('\n')
    : '<p class="empty">Nothing to review in this view.</p>';
  return `${banner}
<nav class="tabs">${tabs}</nav>
<form id="manual-form">
  <input name="source" placeholder="source concept IRI" required>
  <input name="target" placeholder="target concept IRI" required>
  <button type="submit">add manual mapping</button>
</form>
${body}`;
}

// -- explorer -------------------------------------------------------------------

export function renderFacetChips(state: FacetState): string {
  const chips = activeFilters(state)
    .map(
      ({ facet, value }) =>
        `<button class="chip" data-remove-facet="${facet}" data-value="${escapeHtml(value)}">
          ${facet}: ${escapeHtml(shortName(value))} &times;</button>`,
    )
    .join(' ');
  const expansion = `<label><input type="checkbox" id="expand-narrower"${
    state.expandNarrower ? ' checked' : ''
  }> include narrower concepts</label>`;
  return `<div class="active-filters">${chips || '<span class="empty">no filters</span>'} ${expansion}</div>`;
}

export function renderConceptPicker(facet: string, nodes: ConceptNode[], maxDepth = 3): string {
  const rows = flattenTree(nodes, maxDepth)
    .map(
      ({ node, depth }) =>
        `<li style="margin-left:${depth}rem">
          <button data-add-facet="${facet}" data-value="${escapeHtml(node.iri)}">${escapeHtml(node.label)}</button>
        </li>`,
    )
    .join('\n');
  return `<ul class="picker" data-facet="${facet}">${rows}</ul>`;
}

export function renderResults(page: ExpressionPage): string {
  if (page.items.length === 0) {
    return '<p class="empty">No expressions match the current filters.</p>';
  }
  const rows = page.items
    .map(
      (item) => `
  <li>
    <a href="#/resource/${encodeURIComponent(item.iri)}">${escapeHtml(item.title ?? shortName(item.iri))}</a>
    ${item.composer ? `<span class="composer">${escapeHtml(item.composer)}</span>` : ''}
  </li>`,
    )
    .join('\n');
  return `<p class="count">${page.total} expression${page.total === 1 ? '' : 's'}</p><ul class="results">${rows}</ul>`;
}

export function renderDetail(detail: ResourceDetail): string {
  const mainTitle = detail.titles[0] ?? shortName(detail.iri);
  const altTitles = detail.titles.slice(1).map(escapeHtml).join(' | ');
  const facetLink = (facet: string, value: { label: string; iri: string | null }) =>
    value.iri
      ? `<a href="#" data-add-facet="${facet}" data-value="${escapeHtml(value.iri)}">${escapeHtml(value.label)}</a>`
      : escapeHtml(value.label);

  const fields: string[] = [];
  if (detail.key) fields.push(`<dt>Key</dt><dd>${facetLink('key', detail.key)}</dd>`);
  if (detail.genres.length)
    fields.push(`<dt>Genre</dt><dd>${detail.genres.map((g) => facetLink('genre', g)).join(', ')}</dd>`);
  if (detail.opus) fields.push(`<dt>Opus</dt><dd>${escapeHtml(detail.opus)}</dd>`);
  if (detail.catalog_number) fields.push(`<dt>Catalog</dt><dd>${escapeHtml(detail.catalog_number)}</dd>`);
  if (detail.casting.length)
    fields.push(`<dt>Casting</dt><dd>${detail.casting.map((c) => facetLink('medium', c)).join(', ')}</dd>`);

  const timeline = detail.timeline
    .map(
      (entry) => `
  <li>
    <span class="year">${escapeHtml(entry.year ?? '?')}</span>
    <span class="event">${escapeHtml(entry.label)}${entry.place ? ` at ${escapeHtml(entry.place)}` : ''}</span>
    ${entry.note ? `<span class="note">${escapeHtml(entry.note)}</span>` : ''}
  </li>`,
    )
    .join('\n');

  return `
<a href="#/explore" class="back">&larr; back to results</a>
<h2>${escapeHtml(mainTitle)}</h2>
${detail.composers.length ? `<p class="composer">${detail.composers.map(escapeHtml).join(', ')}</p>` : ''}
${altTitles ? `<p class="alt-titles">${altTitles}</p>` : ''}
<dl class="facts">${fields.join('\n')}</dl>
<h3>Timeline</h3>
${detail.timeline.length ? `<ol class="timeline">${timeline}</ol>` : '<p class="empty">No recorded events.</p>'}`;
}
