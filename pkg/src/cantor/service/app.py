"""FastAPI application wiring the toolkit's HTTP surface.

Every computation is a thin delegate into the library modules; the
service adds request validation, error mapping and artifact storage,
nothing else.  Invalid configs and unknown facet concepts map to 400,
missing things to 404, duplicate manual mappings to 409.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import ValidationError as PydanticValidationError

from cantor.errors import ConfigError, ConflictError, NotFoundError, ParseError, ValidationError
from cantor.graph import Iri
from cantor.service.facets import FacetFilter, FacetQuery
from cantor.service.jobs import JobQueue
from cantor.service.schemas import (
    JOB_CONFIG_MODELS,
    ConceptModel,
    DecisionBody,
    ExpressionPage,
    ExpressionSummary,
    HealthModel,
    JobModel,
    ManualMappingBody,
    MappingList,
    MappingModel,
    ResourceDetail,
    VocabularyModel,
)
from cantor.service.state import AppState


def create_app(data_dir, frontend_dir=None) -> FastAPI:
    state = AppState(data_dir)
    queue = JobQueue(state)
    app = FastAPI(title="cantor", version="0.1.0")
    app.state.cantor = state

    @app.exception_handler(ValidationError)
    @app.exception_handler(ConfigError)
    @app.exception_handler(ParseError)
    async def _bad_request(request: Request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _invalid_body(request: Request, exc):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/health", response_model=HealthModel)
    def health():
        return HealthModel(
            status="ok",
            graph_triples=len(state.graph),
            vocabularies=state.registry.names(),
            mappings=len(state.alignment_store.alignment.mappings),
        )

    # -- jobs -------------------------------------------------------------------

    @app.post("/jobs/{kind}", response_model=JobModel, status_code=202)
    async def submit_job(kind: str, request: Request):
        if kind not in JOB_CONFIG_MODELS:
            raise NotFoundError(f"unknown job kind {kind!r}")
        body = await request.json()
        try:
            config = JOB_CONFIG_MODELS[kind].model_validate(body)
        except PydanticValidationError as exc:
            raise ValidationError(str(exc))
        record = queue.submit(kind, config.model_dump())
        return JobModel(**record.as_dict())

    @app.get("/jobs/{job_id}", response_model=JobModel)
    def get_job(job_id: str):
        return JobModel(**queue.get(job_id).as_dict())

    @app.get("/jobs/{job_id}/artifact")
    def get_artifact(job_id: str, index: int = 0):
        record = queue.get(job_id)
        if record.state != "done":
            raise NotFoundError(f"job {job_id} has no artifact (state: {record.state})")
        if index < 0 or index >= len(record.artifacts):
            raise NotFoundError(f"job {job_id} has no artifact #{index}")
        return FileResponse(state.data_dir / record.artifacts[index])

    # -- vocabularies (facet pickers and the hierarchy browser) ---------------------

    @app.get("/vocabularies", response_model=list[str])
    def vocabularies():
        return state.registry.names()

    @app.get("/vocabularies/{name}", response_model=VocabularyModel)
    def vocabulary(name: str):
        vocab = state.registry.get(name)
        concepts = [
            ConceptModel(
                iri=concept.iri.value,
                pref_labels=dict(sorted(concept.pref_labels.items())),
                alt_labels=[[lang, label] for lang, label in concept.alt_labels],
                broader=sorted(b.value for b in concept.broader),
            )
            for concept in sorted(vocab.concepts.values(), key=lambda c: c.iri.value)
        ]
        return VocabularyModel(name=name, scheme=vocab.scheme.value, concepts=concepts)

    # -- faceted search ------------------------------------------------------------

    @app.get("/expressions", response_model=ExpressionPage)
    def expressions(
        request: Request,
        title: str | None = None,
        composer: str | None = None,
        key: str | None = None,
        genre: str | None = None,
        expand_narrower: bool = False,
        offset: int = 0,
        limit: int = 50,
    ):
        filters = []
        for facet, value in (("title", title), ("composer", composer), ("key", key), ("genre", genre)):
            if value is not None:
                filters.append(FacetFilter(facet, value))
        for value in request.query_params.getlist("medium"):
            filters.append(FacetFilter("medium", value))
        query = FacetQuery(filters=filters, expand_narrower=expand_narrower, offset=offset, limit=limit)
        total, page = state.facets.search(query)
        items = []
        for expr in page:
            titles = state.facets.titles(expr)
            composers = state.facets.composers(expr)
            items.append(
                ExpressionSummary(
                    iri=expr.value,
                    title=titles[0] if titles else None,
                    composer=composers[0] if composers else None,
                )
            )
        return ExpressionPage(total=total, offset=query.offset, limit=query.limit, items=items)

    @app.get("/resources/{iri:path}", response_model=ResourceDetail)
    def resource_detail(iri: str):
        resource = Iri(iri)
        if not state.graph.match(resource, None, None):
            raise NotFoundError(f"unknown resource {iri}")
        return ResourceDetail(**state.facets.detail(resource))

    # -- mapping validation -----------------------------------------------------------

    def _mapping_model(mapping) -> MappingModel:
        source_labels, source_broader = state.concept_context(mapping.source.value)
        target_labels, target_broader = state.concept_context(mapping.target.value)
        return MappingModel(
            source=mapping.source.value,
            target=mapping.target.value,
            confidence=mapping.confidence,
            status=mapping.status,
            provenance=mapping.provenance,
            relation=mapping.relation,
            source_labels=source_labels,
            target_labels=target_labels,
            source_broader=source_broader,
            target_broader=target_broader,
        )

    @app.get("/mappings", response_model=MappingList)
    def list_mappings(status: str | None = None):
        items = [_mapping_model(m) for m in state.alignment_store.mappings(status)]
        return MappingList(total=len(items), items=items)

    @app.patch("/mappings", response_model=MappingModel)
    def decide_mapping(source: str, target: str, body: DecisionBody):
        mapping = state.alignment_store.validate(Iri(source), Iri(target), body.decision)
        return _mapping_model(mapping)

    @app.post("/mappings", response_model=MappingModel, status_code=201)
    def add_mapping(body: ManualMappingBody):
        mapping = state.alignment_store.add_manual(Iri(body.source), Iri(body.target))
        return _mapping_model(mapping)

    @app.get("/export/mappings", response_class=PlainTextResponse)
    def export_mappings(format: str = "nt"):
        if format == "nt":
            return PlainTextResponse(state.alignment_store.export_ntriples(), media_type="application/n-triples")
        if format == "tsv":
            return PlainTextResponse(state.alignment_store.export_tsv(), media_type="text/tab-separated-values")
        raise ValidationError(f"unknown export format {format!r}")

    # -- optional static frontend ------------------------------------------------------

    ui_dir = Path(frontend_dir) if frontend_dir else Path(__file__).resolve().parents[3] / "frontend" / "dist"
    if ui_dir.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
