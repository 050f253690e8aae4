// Concept tree for the medium-of-performance hierarchy browser.

import type { Concept, Vocabulary } from './types.js';

export interface ConceptNode {
  iri: string;
  label: string;
  children: ConceptNode[];
}

export function conceptLabel(concept: Concept): string {
  return concept.pref_labels['en'] ?? Object.values(concept.pref_labels)[0] ?? concept.iri;
}

/** Roots (no broader inside the vocabulary) with children sorted by label. */
export function buildConceptTree(vocab: Vocabulary): ConceptNode[] {
  const byIri = new Map(vocab.concepts.map((c) => [c.iri, c]));
  const childrenOf = new Map<string, string[]>();
  const roots: string[] = [];
  for (const concept of vocab.concepts) {
    const parents = concept.broader.filter((b) => byIri.has(b));
    if (parents.length === 0) {
      roots.push(concept.iri);
    }
    for (const parent of parents) {
      const list = childrenOf.get(parent) ?? [];
      list.push(concept.iri);
      childrenOf.set(parent, list);
    }
  }

  const toNode = (iri: string): ConceptNode => {
    const concept = byIri.get(iri)!;
    const children = (childrenOf.get(iri) ?? []).map(toNode);
    children.sort((a, b) => a.label.localeCompare(b.label));
    return { iri, label: conceptLabel(concept), children };
  };

  const nodes = roots.map(toNode);
  nodes.sort((a, b) => a.label.localeCompare(b.label));
  return nodes;
}

/** Depth-limited flattening for rendering (default: 3 levels expanded). */
export function flattenTree(nodes: ConceptNode[], maxDepth = 3): { node: ConceptNode; depth: number }[] {
  const out: { node: ConceptNode; depth: number }[] = [];
  const walk = (node: ConceptNode, depth: number) => {
    out.push({ node, depth });
    if (depth + 1 < maxDepth) {
      for (const child of node.children) walk(child, depth + 1);
    }
  };
  for (const node of nodes) walk(node, 0);
  return out;
}
