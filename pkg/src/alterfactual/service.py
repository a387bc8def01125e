"""Configuration, batch CLI, persistence and the HTTP API used by the explorer UI.

The config file is a flat JSON object of documented dotted keys; CLI flags
override file values, which override defaults. The service is a local audit
tool: no authentication, bounded concurrent jobs, files as the only storage.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import (
    AlterfactualError,
    ConfigError,
    ContractViolationError,
    LlmParseError,
    OracleTransportError,
    ProviderUnavailableError,
)
from .evaluation import (
    bias_probe,
    load_bias_scores,
    metrics_from_results,
    render_report_table,
    report_to_dict,
    result_to_dict,
)
from .generator import Backends, RunConfig, generate, generate_targeted
from .negation import NegationConfig
from .opposites import CachedProvider, CacheStore, ConceptNetClient, ConceptNetProvider, LlmClient, OppositeLexicon
from .oracles import (
    HttpClassifier,
    HttpEmbeddingSimilarity,
    LexiconNegativity,
    MeanVectorSimilarity,
    UnigramPerplexity,
)
from .textcore import PosTagger, Tokenizer, load_stopwords

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BACKEND = 3

BACKEND_FAILURES = (
    OracleTransportError,
    ProviderUnavailableError,
    LlmParseError,
    ContractViolationError,
)

# The documented flat config key set. Flags > file > defaults.
SETTINGS_DEFAULTS = {
    "classifier.url": None,
    "embed.url": None,
    "llm.url": None,
    "llm.model": "gpt-3.5-turbo",
    "conceptnet.url": "https://api.conceptnet.io",
    "provider": "lexicon",
    "mode": "multi",
    "delta": 0.05,
    "epsilon": 0.8,
    "m": None,
    "omega_t": 0.5,
    "negation.n_t": 0.15,
    "negation.window": 3,
    "batch_size": 32,
    "cache.path": None,
    "stopwords.path": None,
    "pos_lexicon.path": None,
    "vectors.path": None,
    "unigrams.path": None,
    "negation_lexicon.path": None,
    "opposites_lexicon.path": None,
    "jobs.max_concurrent": 4,
}

# RunConfig-level knobs that API requests may override per call.
OVERRIDABLE = {
    "delta", "epsilon", "m", "mode", "omega_t", "provider",
    "negation.n_t", "negation.window", "batch_size",
}


def resolve_settings(config_path: str | None, overrides: dict | None = None) -> dict:
    """Defaults <- config file <- overrides, rejecting unknown keys."""
    settings = dict(SETTINGS_DEFAULTS)
    if config_path is not None:
        try:
            with open(config_path, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {config_path}")
        except ValueError as exc:
            raise ConfigError(f"config file {config_path} is not valid JSON: {exc}")
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold a JSON object of flat keys")
        for key, value in file_values.items():
            if key not in SETTINGS_DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            settings[key] = value
    for key, value in (overrides or {}).items():
        if key not in SETTINGS_DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
        if value is not None:
            settings[key] = value
    return settings


def run_config_from(settings: dict) -> RunConfig:
    try:
        return RunConfig(
            delta=float(settings["delta"]),
            epsilon=float(settings["epsilon"]),
            max_words=None if settings["m"] in (None, "none") else int(settings["m"]),
            mode=str(settings["mode"]),
            omega_t=float(settings["omega_t"]),
            negation=NegationConfig(
                n_t=float(settings["negation.n_t"]), window=int(settings["negation.window"])
            ),
            provider=str(settings["provider"]),
            batch_size=int(settings["batch_size"]),
            stopwords_path=settings["stopwords.path"],
            pos_lexicon_path=settings["pos_lexicon.path"],
            vectors_path=settings["vectors.path"],
            unigrams_path=settings["unigrams.path"],
            negation_lexicon_path=settings["negation_lexicon.path"],
            opposites_lexicon_path=settings["opposites_lexicon.path"],
            cache_path=settings["cache.path"],
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"invalid run configuration: {exc}")


def config_to_dict(cfg: RunConfig) -> dict:
    return {
        "delta": cfg.delta,
        "epsilon": cfg.epsilon,
        "m": cfg.max_words,
        "mode": cfg.mode,
        "omega_t": cfg.omega_t,
        "negation.n_t": cfg.negation.n_t,
        "negation.window": cfg.negation.window,
        "provider": cfg.provider,
        "batch_size": cfg.batch_size,
    }


class BackendBuilder:
    """Builds live backends from settings; shared pieces are constructed once."""

    def __init__(self, settings: dict):
        self.settings = settings
        tagger = PosTagger()
        if settings["pos_lexicon.path"]:
            tagger = PosTagger.from_file(settings["pos_lexicon.path"])
        stopwords = ()
        if settings["stopwords.path"]:
            stopwords = load_stopwords(settings["stopwords.path"])
        self.tokenizer = Tokenizer(stopwords=stopwords, tagger=tagger)

        if settings["vectors.path"]:
            self.similarity = MeanVectorSimilarity.from_file(settings["vectors.path"])
        elif settings["embed.url"]:
            self.similarity = HttpEmbeddingSimilarity(settings["embed.url"])
        else:
            raise ConfigError("similarity backend needs vectors.path or embed.url")

        if settings["negation_lexicon.path"]:
            self.negativity = LexiconNegativity.from_file(settings["negation_lexicon.path"])
        else:
            self.negativity = LexiconNegativity(())

        self.perplexity = None
        if settings["unigrams.path"]:
            self.perplexity = UnigramPerplexity.from_file(settings["unigrams.path"])

        if not settings["classifier.url"]:
            raise ConfigError("classifier.url is required")
        self.classifier = HttpClassifier(settings["classifier.url"])

        self.cache_store = CacheStore(settings["cache.path"]) if settings["cache.path"] else None

    def provider_for(self, cfg: RunConfig):
        if cfg.provider == "lexicon":
            path = cfg.opposites_lexicon_path or self.settings["opposites_lexicon.path"]
            if not path:
                raise ConfigError("provider 'lexicon' needs opposites_lexicon.path")
            provider = OppositeLexicon.from_file(path)
        elif cfg.provider == "conceptnet":
            client = ConceptNetClient(self.settings["conceptnet.url"])
            provider = ConceptNetProvider(client, omega_t=cfg.omega_t)
        else:
            return None  # llm provider plans per sentence, no word-level provider
        if self.cache_store is not None:
            provider = CachedProvider(provider, self.cache_store)
        return provider

    def llm_for(self, cfg: RunConfig) -> LlmClient | None:
        if cfg.provider != "llm":
            return None
        if not self.settings["llm.url"]:
            raise ConfigError("provider 'llm' needs llm.url")
        return LlmClient(self.settings["llm.url"], model=self.settings["llm.model"])

    def backends_for(self, cfg: RunConfig, classifier=None, provider=None) -> Backends:
        return Backends(
            tokenizer=self.tokenizer,
            classifier=classifier or self.classifier,
            similarity=self.similarity,
            negativity=self.negativity,
            provider=provider if provider is not None else self.provider_for(cfg),
            llm=self.llm_for(cfg),
            perplexity=self.perplexity,
        )


def load_target_pairs(path) -> list[tuple[str, str]]:
    """Target-word file: rows 'word opposite'."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if len(parts) != 2:
                raise ConfigError(f"target line needs 'word opposite', got {line!r}")
            pairs.append((parts[0].lower(), parts[1].lower()))
    if not pairs:
        raise ConfigError(f"target file {path} is empty")
    return pairs


def targeted_setup(cfg: RunConfig, pairs: list[tuple[str, str]]) -> tuple[RunConfig, OppositeLexicon]:
    """Targets both define eligibility and act as the swap lexicon."""
    table: dict[str, list[str]] = {}
    for word, opposite in pairs:
        table.setdefault(word, []).append(opposite)
    cfg = dataclasses.replace(
        cfg, provider="lexicon", target_words=frozenset(table.keys())
    )
    return cfg, OppositeLexicon(table)


# --- job records --------------------------------------------------------------

JOB_STATES = ("queued", "running", "done", "failed")


@dataclasses.dataclass
class JobRecord:
    job_id: str
    kind: str
    cfg: dict
    input_refs: list[str]
    status: str = "queued"
    output_path: str | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


class JobStore:
    """In-memory job registry with forward-only status transitions."""

    def __init__(self):
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()

    def create(self, kind: str, cfg: dict, input_refs: list[str]) -> JobRecord:
        record = JobRecord(job_id=uuid.uuid4().hex[:12], kind=kind, cfg=cfg, input_refs=input_refs)
        with self._lock:
            self._jobs[record.job_id] = record
        return record

    def advance(self, job_id: str, status: str, error: str | None = None) -> None:
        with self._lock:
            record = self._jobs[job_id]
            if JOB_STATES.index(status) < JOB_STATES.index(record.status):
                raise ValueError(f"job {job_id}: cannot move {record.status} -> {status}")
            record.status = status
            if error is not None:
                record.error = error

    def get(self, job_id: str) -> JobRecord | None:
        with self._lock:
            return self._jobs.get(job_id)


# --- HTTP API ------------------------------------------------------------------

class ApiError(Exception):
    def __init__(self, status: int, field: str | None, message: str):
        super().__init__(message)
        self.status = status
        self.field = field
        self.message = message


class AuditService:
    """Local HTTP service exposing generation, targeted probes and comparisons."""

    def __init__(self, settings: dict, host: str = "127.0.0.1", port: int = 0):
        self.settings = settings
        self.base_cfg = run_config_from(settings)
        self.builder = BackendBuilder(settings)
        self.jobs = JobStore()
        self._slots = threading.BoundedSemaphore(int(settings["jobs.max_concurrent"]))
        self._server = ThreadingHTTPServer((host, port), self._make_handler())
        self._thread: threading.Thread | None = None

    @property
    def url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def start(self):
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def serve_forever(self):
        self._server.serve_forever()

    def stop(self):
        self._server.shutdown()
        self._server.server_close()

    # request handling ---------------------------------------------------------

    def _config_with(self, overrides: dict | None) -> RunConfig:
        if not overrides:
            return self.base_cfg
        unknown = set(overrides) - OVERRIDABLE
        if unknown:
            raise ApiError(400, "config", f"non-overridable config keys: {sorted(unknown)}")
        merged = dict(self.settings)
        merged.update(overrides)
        try:
            return run_config_from(merged)
        except ConfigError as exc:
            raise ApiError(400, "config", str(exc))

    @staticmethod
    def _require_text(body: dict) -> str:
        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            raise ApiError(400, "text", "'text' must be a non-empty string")
        return text

    @staticmethod
    def _parse_targets(body: dict) -> list[tuple[str, str]]:
        raw = body.get("targets")
        pairs: list[tuple[str, str]] = []
        if isinstance(raw, dict):
            pairs = [(str(k).lower(), str(v).lower()) for k, v in raw.items()]
        elif isinstance(raw, list):
            for item in raw:
                if not (isinstance(item, (list, tuple)) and len(item) == 2):
                    raise ApiError(400, "targets", "each target must be a [word, opposite] pair")
                pairs.append((str(item[0]).lower(), str(item[1]).lower()))
        if not pairs:
            raise ApiError(400, "targets", "'targets' must be a non-empty mapping or pair list")
        return pairs

    def _run_result(self, result, job: JobRecord) -> dict:
        if result.aborted:
            self.jobs.advance(job.job_id, "failed", error=result.abort_reason)
            raise ApiError(502, None, f"backend failure: {result.abort_reason}")
        self.jobs.advance(job.job_id, "done")
        return {"job_id": job.job_id, "queries": result.queries, "result": result_to_dict(result)}

    def handle_generate(self, body: dict) -> dict:
        text = self._require_text(body)
        cfg = self._config_with(body.get("config"))
        job = self.jobs.create("generate", config_to_dict(cfg), [text[:80]])
        with self._slots:
            self.jobs.advance(job.job_id, "running")
            try:
                backends = self.builder.backends_for(cfg)
            except ConfigError as exc:
                self.jobs.advance(job.job_id, "failed", error=str(exc))
                raise ApiError(400, "config", str(exc))
            doc = backends.tokenizer.tokenize(text)
            result = generate(doc, cfg, backends)
        return self._run_result(result, job)

    def handle_targeted(self, body: dict) -> dict:
        text = self._require_text(body)
        pairs = self._parse_targets(body)
        cfg = self._config_with(body.get("config"))
        cfg, provider = targeted_setup(cfg, pairs)
        job = self.jobs.create("targeted", config_to_dict(cfg), [text[:80]])
        with self._slots:
            self.jobs.advance(job.job_id, "running")
            backends = self.builder.backends_for(cfg, provider=provider)
            doc = backends.tokenizer.tokenize(text)
            result = generate_targeted(doc, cfg, backends)
        return self._run_result(result, job)

    def handle_probe(self, body: dict) -> dict:
        models = body.get("models")
        if not isinstance(models, list) or not models or not all(
            isinstance(m, dict) and m.get("id") and m.get("url") for m in models
        ):
            raise ApiError(400, "models", "'models' must be a list of {id, url}")
        texts = body.get("texts")
        if not isinstance(texts, list) or not texts or not all(isinstance(t, str) for t in texts):
            raise ApiError(400, "texts", "'texts' must be a non-empty list of strings")
        pairs = self._parse_targets(body)
        attribute = body.get("attribute") or "attributes"
        scores = body.get("bias_scores") or None
        if scores is not None and not isinstance(scores, dict):
            raise ApiError(400, "bias_scores", "'bias_scores' must map model id to number")

        cfg = self._config_with(body.get("config"))
        cfg, provider = targeted_setup(cfg, pairs)
        job = self.jobs.create("probe", config_to_dict(cfg), [m["id"] for m in models])
        with self._slots:
            self.jobs.advance(job.job_id, "running")
            backends = self.builder.backends_for(cfg, provider=provider)
            docs = [backends.tokenizer.tokenize(t) for t in texts]
            oracles = [(m["id"], HttpClassifier(m["url"])) for m in models]
            try:
                report = bias_probe(
                    oracles, docs, cfg, backends,
                    external_scores={k: float(v) for k, v in scores.items()} if scores else None,
                    attribute=str(attribute), swaps=pairs,
                )
            except BACKEND_FAILURES as exc:
                self.jobs.advance(job.job_id, "failed", error=str(exc))
                raise ApiError(502, None, f"backend failure: {type(exc).__name__}: {exc}")
            except ValueError as exc:
                self.jobs.advance(job.job_id, "failed", error=str(exc))
                raise ApiError(400, "targets", str(exc))
        self.jobs.advance(job.job_id, "done")
        return {
            "job_id": job.job_id,
            "queries": sum(e.queries for e in report.entries),
            "entries": [
                {
                    "model_id": e.model_id,
                    "fidelity": e.fidelity,
                    "applicable": e.applicable,
                    "strict_successes": e.strict_successes,
                    "queries": e.queries,
                }
                for e in report.entries
            ],
            "correlation": report.correlation,
            "explanations": report.explanation_texts,
        }

    def handle_get(self, path: str) -> tuple[int, dict]:
        if path == "/api/config":
            return 200, config_to_dict(self.base_cfg)
        if path.startswith("/api/jobs/"):
            record = self.jobs.get(path.rsplit("/", 1)[1])
            if record is None:
                return 404, {"error": {"field": "job_id", "message": "unknown job"}}
            return 200, record.to_dict()
        return 404, {"error": {"field": None, "message": f"no route {path}"}}

    def handle_post(self, path: str, body: dict) -> tuple[int, dict]:
        handlers = {
            "/api/generate": self.handle_generate,
            "/api/targeted": self.handle_targeted,
            "/api/probe": self.handle_probe,
        }
        handler = handlers.get(path)
        if handler is None:
            return 404, {"error": {"field": None, "message": f"no route {path}"}}
        try:
            return 200, handler(body)
        except ApiError as exc:
            return exc.status, {"error": {"field": exc.field, "message": exc.message}}
        except BACKEND_FAILURES as exc:
            return 502, {"error": {"field": None, "message": f"{type(exc).__name__}: {exc}"}}

    def _make_handler(self):
        service = self

        class Handler(BaseHTTPRequestHandler):
            def _reply(self, status: int, payload: dict):
                data = json.dumps(payload).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Access-Control-Allow-Origin", "*")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def do_GET(self):
                status, payload = service.handle_get(self.path)
                self._reply(status, payload)

            def do_POST(self):
                length = int(self.headers.get("Content-Length") or 0)
                raw = self.rfile.read(length) if length else b""
                try:
                    body = json.loads(raw) if raw else {}
                    if not isinstance(body, dict):
                        raise ValueError("body must be a JSON object")
                except ValueError as exc:
                    self._reply(400, {"error": {"field": "body", "message": f"invalid JSON: {exc}"}})
                    return
                status, payload = service.handle_post(self.path, body)
                self._reply(status, payload)

            def log_message(self, *args):
                pass

        return Handler


# --- CLI -----------------------------------------------------------------------

def _settings_from_args(args) -> dict:
    overrides = {
        "provider": args.provider,
        "mode": args.mode,
        "delta": args.delta,
        "epsilon": args.epsilon,
        "m": args.m,
        "omega_t": args.omega_t,
        "classifier.url": getattr(args, "classifier_url", None),
        "vectors.path": getattr(args, "vectors", None),
        "stopwords.path": getattr(args, "stopwords", None),
        "pos_lexicon.path": getattr(args, "pos_lexicon", None),
        "unigrams.path": getattr(args, "unigrams", None),
        "negation_lexicon.path": getattr(args, "negation_lexicon", None),
        "opposites_lexicon.path": getattr(args, "opposites_lexicon", None),
        "cache.path": getattr(args, "cache", None),
    }
    return resolve_settings(args.config, overrides)


def _read_documents(path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return [line.rstrip("\n") for line in fh if line.strip()]
    except FileNotFoundError:
        raise ConfigError(f"input file not found: {path}")


def cli_generate(args) -> int:
    try:
        settings = _settings_from_args(args)
        cfg = run_config_from(settings)
        builder = BackendBuilder(settings)
        backends = builder.backends_for(cfg)
        texts = _read_documents(args.infile)
        if not texts:
            raise ConfigError(f"input file {args.infile} holds no documents")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    results = []
    backend_failed = False
    with open(args.out, "w", encoding="utf-8") as out:
        for index, text in enumerate(texts):
            doc = backends.tokenizer.tokenize(text)
            result = generate(doc, cfg, backends)
            results.append(result)
            record = {"doc_index": index, "timestamp": time.time(),
                      "result": result_to_dict(result)}
            out.write(json.dumps(record) + "\n")
            out.flush()  # crash-safe: every completed document is preserved
            if result.aborted:
                backend_failed = True

    report = metrics_from_results(results, backends.perplexity)
    report_path = args.report or (str(args.out) + ".report.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2)
        fh.write("\n")
    print(render_report_table(report))
    if backend_failed:
        print("backend failure: one or more documents aborted", file=sys.stderr)
        return EXIT_BACKEND
    return EXIT_OK


def cli_bias_probe(args) -> int:
    try:
        settings = _settings_from_args(args)
        cfg = run_config_from(settings)
        pairs = load_target_pairs(args.targets)
        cfg, provider = targeted_setup(cfg, pairs)
        parsed = []
        for model_arg in args.models:
            if "=" not in model_arg:
                raise ConfigError(f"--model needs id=url, got {model_arg!r}")
            parsed.append(model_arg.split("=", 1))
        builder = BackendBuilder({**settings, "classifier.url": parsed[0][1]})
        backends = builder.backends_for(cfg, provider=provider)
        models = [(model_id, HttpClassifier(url)) for model_id, url in parsed]
        texts = _read_documents(args.infile)
        scores = load_bias_scores(args.bias_scores) if args.bias_scores else None
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    docs = [backends.tokenizer.tokenize(t) for t in texts]
    try:
        report = bias_probe(models, docs, cfg, backends, external_scores=scores,
                            attribute=args.attribute, swaps=pairs)
    except BACKEND_FAILURES as exc:
        print(f"backend failure: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    payload = {
        "entries": [
            {"model_id": e.model_id, "fidelity": e.fidelity, "applicable": e.applicable,
             "strict_successes": e.strict_successes, "queries": e.queries}
            for e in report.entries
        ],
        "correlation": report.correlation,
        "explanations": report.explanation_texts,
        "external_scores": report.external_scores,
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    for text in report.explanation_texts:
        print(text)
    if report.correlation is not None:
        print(f"correlation(fidelity, bias score) = {report.correlation:.3f}")
    return EXIT_OK


def cli_serve(args) -> int:
    try:
        settings = _settings_from_args(args)
        service = AuditService(settings, host=args.host, port=args.port)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"serving on {service.url}")
    try:
        service.serve_forever()
    except KeyboardInterrupt:
        service.stop()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alterfactual",
        description="Generate and audit 'no matter what' explanations for text classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat JSON config file")
        p.add_argument("--provider", choices=["conceptnet", "llm", "lexicon"])
        p.add_argument("--mode", choices=["single", "multi"])
        p.add_argument("--delta", type=float)
        p.add_argument("--epsilon", type=float)
        p.add_argument("--m", type=int)
        p.add_argument("--omega-t", dest="omega_t", type=float)
        p.add_argument("--classifier-url")
        p.add_argument("--vectors")
        p.add_argument("--stopwords")
        p.add_argument("--pos-lexicon")
        p.add_argument("--unigrams")
        p.add_argument("--negation-lexicon")
        p.add_argument("--opposites-lexicon")
        p.add_argument("--cache")

    gen = sub.add_parser("generate", help="generate alterfactuals for a document file")
    common(gen)
    gen.add_argument("--in", dest="infile", required=True, help="one document per line, UTF-8")
    gen.add_argument("--out", required=True, help="JSONL trace output path")
    gen.add_argument("--report", help="metrics report path (default: <out>.report.json)")
    gen.set_defaults(func=cli_generate)

    probe = sub.add_parser("bias-probe", help="targeted fidelity probe across models")
    common(probe)
    probe.add_argument("--in", dest="infile", required=True)
    probe.add_argument("--model", dest="models", action="append", required=True,
                       help="model as id=url; repeatable")
    probe.add_argument("--targets", required=True, help="rows 'word opposite'")
    probe.add_argument("--attribute", default="attributes")
    probe.add_argument("--bias-scores", dest="bias_scores",
                       help="two-column file: model id, external bias score")
    probe.add_argument("--out", required=True, help="probe report JSON path")
    probe.set_defaults(func=cli_bias_probe)

    serve = sub.add_parser("serve", help="run the HTTP audit service")
    common(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.set_defaults(func=cli_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AlterfactualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BACKEND


if __name__ == "__main__":
    sys.exit(main())
