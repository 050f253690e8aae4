"""Precision / recall / F1 of a link set against a reference matching."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    true_positives: int
    false_positives: int
    false_negatives: int

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "false_negatives": self.false_negatives,
        }


def evaluate(linkset, reference) -> EvalReport:
    got = {(link.source, link.target) for link in linkset.links}
    want = {(link.source, link.target) for link in reference.links}
    tp = len(got & want)
    fp = len(got - want)
    fn = len(want - got)
    precision = tp / (tp + fp) if (tp + fp) else 0.0
    recall = tp / (tp + fn) if (tp + fn) else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return EvalReport(precision, recall, f1, tp, fp, fn)
