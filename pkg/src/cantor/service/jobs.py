"""Background job execution.

Jobs run off the request path in worker threads; a lock per job kind
keeps execution serial within a kind (desk-scale queue).  Job state
only moves forward: queued -> running -> done | failed.
"""

from __future__ import annotations

import datetime
import threading
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional

from cantor.align import align as run_align
from cantor.align import export_tsv
from cantor.convert import ConvertConfig, convert
from cantor.errors import NotFoundError
from cantor.linking import PerturbationRates, generate_benchmark, link, make_seed_graph, write_benchmark
from cantor.linking.pipeline import LinkConfig, linkset_from_pairs
from cantor.marc import Dialect, parse_iso2709, parse_marcxml
from cantor.ntriples import load_ntriples, save_ntriples
from cantor.pivot import build_pivot
from cantor.rules import load_rule_file
from cantor.schema import OWL_SAME_AS
from cantor.vocab import VocabularyRegistry, load_vocabulary


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


@dataclass
class JobRecord:
    id: str
    kind: str
    state: str
    config: dict
    artifacts: list[str] = field(default_factory=list)
    error: Optional[str] = None
    created_at: str = field(default_factory=_now)
    finished_at: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "state": self.state,
            "config": self.config,
            "artifacts": self.artifacts,
            "error": self.error,
            "created_at": self.created_at,
            "finished_at": self.finished_at,
        }


class JobQueue:
    def __init__(self, state):
        self.state = state
        self.jobs: dict[str, JobRecord] = {}
        self._jobs_lock = threading.Lock()
        self._kind_locks = {kind: threading.Lock() for kind in ("convert", "align", "link", "pivot", "bench")}

    def get(self, job_id: str) -> JobRecord:
        with self._jobs_lock:
            if job_id not in self.jobs:
                raise NotFoundError(f"unknown job {job_id!r}")
            return self.jobs[job_id]

    def submit(self, kind: str, config: dict) -> JobRecord:
        record = JobRecord(id=uuid.uuid4().hex[:12], kind=kind, state="queued", config=config)
        with self._jobs_lock:
            self.jobs[record.id] = record
        thread = threading.Thread(target=self._run, args=(record,), daemon=True)
        thread.start()
        return record

    def _run(self, record: JobRecord):
        with self._kind_locks[record.kind]:
            record.state = "running"
            try:
                runner: Callable = getattr(self, f"_run_{record.kind}")
                record.artifacts = runner(record)
                record.state = "done"
            except Exception as exc:  # failures land in the record, not the log
                record.state = "failed"
                record.error = f"{type(exc).__name__}: {exc}"
            record.finished_at = _now()

    # -- runners -------------------------------------------------------------

    def _job_dir(self, record: JobRecord):
        directory = self.state.data_dir / "jobs" / record.id
        directory.mkdir(parents=True, exist_ok=True)
        return directory

    def _registry_for(self, rel_vocab_dir: str) -> VocabularyRegistry:
        vocab_dir = self.state.resolve(rel_vocab_dir)
        return VocabularyRegistry.from_directory(vocab_dir)

    def _load_graph(self, rel_path: str):
        return load_ntriples(self.state.resolve(rel_path).read_text(encoding="utf-8"))

    def _run_convert(self, record: JobRecord) -> list[str]:
        cfg = record.config
        input_path = self.state.resolve(cfg["input"])
        dialect = Dialect(cfg["dialect"])
        if input_path.suffix.lower() == ".xml":
            records = parse_marcxml(input_path.read_text(encoding="utf-8"), dialect)
        else:
            records = parse_iso2709(input_path.read_bytes(), dialect)
        rules = load_rule_file(self.state.resolve(cfg["rules"]))
        registry = self._registry_for(cfg.get("vocab_dir", "vocab"))
        result = convert(records, rules, registry, ConvertConfig(base=cfg.get("base", "http://data.example.org")))
        out = self._job_dir(record) / "output.nt"
        out.write_text(save_ntriples(result.graph), encoding="utf-8")
        return [str(out.relative_to(self.state.data_dir))]

    def _run_align(self, record: JobRecord) -> list[str]:
        from cantor.align import AlignConfig

        cfg = record.config
        vocab_a = load_vocabulary(self.state.resolve(cfg["vocab_a"]))
        vocab_b = load_vocabulary(self.state.resolve(cfg["vocab_b"]))
        alignment = run_align(vocab_a, vocab_b, AlignConfig(threshold=cfg.get("threshold", 0.82)))
        out = self._job_dir(record) / "alignment.tsv"
        out.write_text(export_tsv(alignment), encoding="utf-8")
        return [str(out.relative_to(self.state.data_dir))]

    def _run_link(self, record: JobRecord) -> list[str]:
        cfg = record.config
        source = self._load_graph(cfg["source"])
        target = self._load_graph(cfg["target"])
        registry = self._registry_for(cfg.get("vocab_dir", "vocab"))
        config = LinkConfig(
            depth=cfg.get("depth", 2),
            candidate_threshold=cfg.get("candidate_threshold", 0.4),
            cluster_cut=cfg.get("cluster_cut", 0.8),
            one_to_one=cfg.get("one_to_one", True),
        )
        result = link(source, target, registry, config)
        job_dir = self._job_dir(record)
        nt_path = job_dir / "links.nt"
        tsv_path = job_dir / "links.tsv"
        nt_path.write_text(result.to_ntriples(), encoding="utf-8")
        tsv_path.write_text(result.to_tsv(), encoding="utf-8")
        return [str(p.relative_to(self.state.data_dir)) for p in (nt_path, tsv_path)]

    def _run_pivot(self, record: JobRecord) -> list[str]:
        cfg = record.config
        linksets = []
        for rel in cfg["linksets"]:
            graph = self._load_graph(rel)
            linksets.append(
                linkset_from_pairs({(t.subject, t.object) for t in graph if t.predicate == OWL_SAME_AS})
            )
        graphs = {rel: self._load_graph(rel) for rel in cfg.get("graphs", [])}
        result = build_pivot(linksets, graphs or None, schema_realises=self.state.schema.realises)
        out = self._job_dir(record) / "pivot.nt"
        out.write_text(save_ntriples(result.graph), encoding="utf-8")
        return [str(out.relative_to(self.state.data_dir))]

    def _run_bench(self, record: JobRecord) -> list[str]:
        cfg = record.config
        rates = {
            "value": PerturbationRates.value_only,
            "all": PerturbationRates.defaults,
            "none": PerturbationRates,
        }[cfg.get("rates", "value")]()
        registry = self._registry_for(cfg.get("vocab_dir", "vocab"))
        seed = make_seed_graph(cfg.get("works", 50), cfg.get("rng_seed", 7))
        benchmark = generate_benchmark(seed, rates, cfg.get("perturbation_seed", 11), registry)
        out_dir = self._job_dir(record) / "benchmark"
        write_benchmark(benchmark, out_dir)
        return [
            str((out_dir / name).relative_to(self.state.data_dir))
            for name in ("source.nt", "target.nt", "reference.nt", "log.json")
        ]
