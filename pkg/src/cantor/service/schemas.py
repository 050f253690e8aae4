"""Request/response models for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ConceptValue(BaseModel):
    """A facet value, carrying its concept IRI when vocabulary-resolved."""

    label: str
    iri: Optional[str] = None


class ExpressionSummary(BaseModel):
    iri: str
    title: Optional[str] = None
    composer: Optional[str] = None


class ExpressionPage(BaseModel):
    total: int
    offset: int
    limit: int
    items: list[ExpressionSummary]


class TimelineEntry(BaseModel):
    year: Optional[str] = None
    label: str
    place: Optional[str] = None
    note: Optional[str] = None


class ResourceDetail(BaseModel):
    iri: str
    types: list[str]
    titles: list[str]
    composers: list[str]
    key: Optional[ConceptValue] = None
    genres: list[ConceptValue] = Field(default_factory=list)
    opus: Optional[str] = None
    catalog_number: Optional[str] = None
    casting: list[ConceptValue] = Field(default_factory=list)
    timeline: list[TimelineEntry] = Field(default_factory=list)


class MappingModel(BaseModel):
    source: str
    target: str
    confidence: float
    status: str
    provenance: str
    relation: str = "exactMatch"
    source_labels: dict[str, str] = Field(default_factory=dict)
    target_labels: dict[str, str] = Field(default_factory=dict)
    source_broader: list[str] = Field(default_factory=list)
    target_broader: list[str] = Field(default_factory=list)


class MappingList(BaseModel):
    total: int
    items: list[MappingModel]


class DecisionBody(BaseModel):
    decision: Literal["accepted", "rejected"]


class ManualMappingBody(BaseModel):
    source: str
    target: str


# -- job configs ---------------------------------------------------------------

class ConvertJobConfig(BaseModel):
    input: str
    dialect: Literal["unimarc", "intermarc"]
    rules: str
    vocab_dir: str = "vocab"
    base: str = "http://data.example.org"


class AlignJobConfig(BaseModel):
    vocab_a: str
    vocab_b: str
    threshold: float = Field(default=0.82, ge=0.0, le=1.0)


class LinkJobConfig(BaseModel):
    source: str
    target: str
    depth: int = Field(default=2, ge=1, le=6)
    candidate_threshold: float = Field(default=0.4, ge=0.0, le=1.0)
    cluster_cut: float = Field(default=0.8, ge=0.0, le=1.0)
    vocab_dir: str = "vocab"
    one_to_one: bool = True


class PivotJobConfig(BaseModel):
    linksets: list[str]
    graphs: list[str] = Field(default_factory=list)


class BenchJobConfig(BaseModel):
    works: int = Field(default=50, ge=1, le=5000)
    rng_seed: int = 7
    perturbation_seed: int = 11
    rates: Literal["value", "all", "none"] = "value"
    vocab_dir: str = "vocab"


JOB_CONFIG_MODELS = {
    "convert": ConvertJobConfig,
    "align": AlignJobConfig,
    "link": LinkJobConfig,
    "pivot": PivotJobConfig,
    "bench": BenchJobConfig,
}


class JobModel(BaseModel):
    id: str
    kind: Literal["convert", "align", "link", "pivot", "bench"]
    state: Literal["queued", "running", "done", "failed"]
    config: dict
    artifacts: list[str] = Field(default_factory=list)
    error: Optional[str] = None
    created_at: str
    finished_at: Optional[str] = None


class HealthModel(BaseModel):
    status: str
    graph_triples: int
    vocabularies: list[str]
    mappings: int


class ConceptModel(BaseModel):
    iri: str
    pref_labels: dict[str, str]
    alt_labels: list[list[str]] = Field(default_factory=list)
    broader: list[str] = Field(default_factory=list)


class VocabularyModel(BaseModel):
    name: str
    scheme: str
    concepts: list[ConceptModel]
