"""Command-line pipeline: crawl, extract, train, classify, eval, curate, serve.

Stages communicate only through files (JSON-lines and TSV). Output files
are written atomically (tmp file + rename). Each command logs one JSON
event per stage milestone on standard error and exits nonzero on stage
failure.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

import click

from . import corpus as corpus_mod
from . import evaluation, features, harvest, models, naive_bayes, svm
from .extraction import CandidateSimile, ExtractReport, extract_corpus
from .stemming import default_rules
from .tagging import default_lexicon, lexicon_from_dir

DEFAULT_STORE = os.environ.get("SIMILEMINE_STORE", "similes.db")


def log_event(**fields) -> None:
    print(json.dumps(fields, ensure_ascii=False, sort_keys=True), file=sys.stderr)


def fail(stage: str, error: Exception) -> None:
    log_event(stage=stage, error=type(error).__name__, message=str(error))
    sys.exit(1)


@dataclass
class PipelineRun:
    stage: str
    inputs: int = 0
    outputs: int = 0
    warnings: list[str] = field(default_factory=list)

    def log(self, **extra):
        log_event(stage=self.stage, inputs=self.inputs, outputs=self.outputs,
                  warnings=self.warnings, **extra)


def write_jsonl_atomic(path: str, rows) -> int:
    """Write dict rows as JSON lines via a temp file + atomic rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    count = 0
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".jsonl")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
                count += 1
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return count


def read_jsonl(path: str):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)


def open_store(path: str, rules=None, fold_search: bool = True) -> corpus_mod.SimileStore:
    return corpus_mod.SimileStore(path, rules or default_rules(), fold_search=fold_search)


@click.group()
def main():
    """Simile mining pipeline."""


@main.command()
@click.option("--site", "site_cfg", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--limit", type=int, default=None, help="cap fetched pages")
def crawl(site_cfg, out_path, limit):
    """Crawl a configured site into a JSON-lines document file."""
    run = PipelineRun("crawl")
    try:
        cfg = harvest.load_site_config(site_cfg)
        if limit is not None:
            cfg.max_pages = min(cfg.max_pages, limit)
        report = harvest.CrawlReport()
        run.outputs = write_jsonl_atomic(
            out_path, (doc.to_dict() for doc in harvest.crawl(cfg, report=report))
        )
        run.inputs = report.fetched
        if report.skipped_errors:
            run.warnings.append(f"{report.skipped_errors} pages skipped on errors")
        run.log(site=cfg.site_id, robots_skipped=report.skipped_robots)
    except Exception as exc:
        fail("crawl", exc)


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--lexicon", "lexicon_dir", type=click.Path(exists=True), default=None,
              help="directory with lexicon.tsv (+ suffixes.tsv); packaged default")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--limit", type=int, default=None, help="cap processed documents")
def extract(in_path, lexicon_dir, out_path, limit):
    """Extract candidate similes from crawled documents."""
    run = PipelineRun("extract")
    try:
        lex = lexicon_from_dir(lexicon_dir) if lexicon_dir else default_lexicon()
        report = ExtractReport()

        def documents():
            for i, row in enumerate(read_jsonl(in_path)):
                if limit is not None and i >= limit:
                    break
                yield harvest.Document(**row)

        run.outputs = write_jsonl_atomic(
            out_path,
            (c.to_dict() for c in extract_corpus(documents(), lex, report=report)),
        )
        run.inputs = report.documents
        if report.failed_documents:
            run.warnings.append(f"{report.failed_documents} documents failed")
        run.log(duplicates_folded=report.duplicates_folded)
    except Exception as exc:
        fail("extract", exc)


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--model", "kind", required=True, type=click.Choice(["nb", "svm"]))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--alpha", type=float, default=1.0, help="NB smoothing")
@click.option("--c", "c_param", type=float, default=1.0, help="SVM C")
@click.option("--degree", type=int, default=2, help="polynomial degree")
@click.option("--kernel", type=click.Choice(["linear", "polynomial"]), default="polynomial")
@click.option("--seed", type=int, default=0)
def train(data_path, kind, out_path, alpha, c_param, degree, kernel, seed):
    """Train a classifier from a labeled TSV file."""
    run = PipelineRun("train")
    try:
        rules = default_rules()
        data = features.load_labeled(data_path, rules)
        run.inputs = len(data)
        if kind == "nb":
            model = naive_bayes.train_nb(data, alpha=alpha)
        else:
            model = svm.train_svm(data, c_param=c_param, kernel=kernel,
                                  degree=degree, seed=seed)
        models.save_model(model, out_path)
        metrics = evaluation.evaluate(model, data)
        run.outputs = 1
        run.log(kind=kind, train_precision=round(metrics.precision, 4),
                train_recall=round(metrics.recall, 4),
                train_f=round(metrics.f_measure, 4))
        click.echo(f"P={metrics.precision:.3f} R={metrics.recall:.3f} "
                   f"F={metrics.f_measure:.3f} (training set)")
    except Exception as exc:
        fail("train", exc)


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--threshold", type=float, default=0.0,
              help="score cut; higher trades recall for precision")
def classify(model_path, in_path, out_path, threshold):
    """Score extracted candidates and keep label + score on each."""
    run = PipelineRun("classify")
    try:
        rules = default_rules()
        model = models.load_model(model_path)

        def rows():
            for row in read_jsonl(in_path):
                run.inputs += 1
                cand = CandidateSimile.from_dict(row)
                _, score = models.predict(model, features.featurize(cand, rules))
                out = cand.to_dict()
                out["label"] = 1 if score > threshold else 0
                out["score"] = score
                yield out

        run.outputs = write_jsonl_atomic(out_path, rows())
        run.log(model=model.kind, threshold=threshold)
    except Exception as exc:
        fail("classify", exc)


@main.command("eval")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--folds", type=int, default=None)
@click.option("--seed", type=int, default=0)
def eval_cmd(model_path, data_path, folds, seed):
    """Evaluate a model file; with --folds, retrain per fold (same hyperparameters)."""
    try:
        rules = default_rules()
        model = models.load_model(model_path)
        data = features.load_labeled(data_path, rules)
        if folds is None:
            metrics = evaluation.evaluate(model, data)
            click.echo(json.dumps(vars(metrics), sort_keys=True))
            return
        if model.kind == "nb":
            trainer = lambda d: naive_bayes.train_nb(d, alpha=model.nb.alpha)
        else:
            trainer = lambda d: svm.train_svm(
                d, c_param=model.svm.c_param, kernel=model.svm.kernel,
                degree=model.svm.degree, tol=model.svm.tol, seed=seed)
        report = evaluation.cross_validate(data, folds, trainer, seed=seed)
        click.echo(json.dumps(report.to_dict(), sort_keys=True))
    except Exception as exc:
        fail("eval", exc)


@main.command("import-corpus")
@click.option("--file", "file_path", required=True, type=click.Path(exists=True))
@click.option("--source", required=True, type=click.Choice(["karadzic", "manual"]))
@click.option("--trusted", is_flag=True, help="insert as approved")
@click.option("--store", "store_path", default=DEFAULT_STORE, type=click.Path())
def import_corpus(file_path, source, trusted, store_path):
    """Import one-simile-per-line text (# comments) into the store."""
    run = PipelineRun("import-corpus")
    try:
        phrases = []
        with open(file_path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if line and not line.startswith("#"):
                    phrases.append(line)
        run.inputs = len(phrases)
        store = open_store(store_path)
        try:
            report = store.merge_corpora(phrases, source, trusted=trusted)
        finally:
            store.close()
        run.outputs = report.added
        run.warnings = report.errors
        run.log(duplicates=report.duplicates, intersection=report.intersection)
        click.echo(json.dumps({
            "added": report.added,
            "duplicates": report.duplicates,
            "intersection": report.intersection,
            "errors": report.errors,
        }, ensure_ascii=False, sort_keys=True))
    except Exception as exc:
        fail("import-corpus", exc)


@main.command("load-candidates")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_path", default=DEFAULT_STORE, type=click.Path())
def load_candidates(in_path, store_path):
    """Load classified positives into the store as pending www records."""
    run = PipelineRun("load-candidates")
    try:
        store = open_store(store_path)
        created = duplicates = 0
        try:
            for row in read_jsonl(in_path):
                run.inputs += 1
                if row.get("label") != 1:
                    continue
                try:
                    result = store.upsert(
                        row["phrase"], "www", kind=row.get("kind", "unknown"),
                        doc_url=row.get("doc_url") or None,
                        count=row.get("count", 1),
                    )
                except corpus_mod.NotASimileError as exc:
                    run.warnings.append(str(exc))
                    continue
                if result.created:
                    created += 1
                else:
                    duplicates += 1
        finally:
            store.close()
        run.outputs = created
        run.log(duplicates=duplicates)
        click.echo(json.dumps({"created": created, "duplicates": duplicates},
                              sort_keys=True))
    except Exception as exc:
        fail("load-candidates", exc)


@main.command()
@click.option("--store", "store_path", default=DEFAULT_STORE, type=click.Path())
def stats(store_path):
    """Print corpus counts by source and status."""
    try:
        store = open_store(store_path)
        try:
            click.echo(json.dumps(store.stats(), ensure_ascii=False, sort_keys=True))
        finally:
            store.close()
    except Exception as exc:
        fail("stats", exc)


@main.command()
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--store", "store_path", default=DEFAULT_STORE, type=click.Path())
def export(out_path, store_path):
    """Export all records as JSON lines."""
    try:
        store = open_store(store_path)
        try:
            n = store.export_jsonl(out_path)
        finally:
            store.close()
        log_event(stage="export", outputs=n)
    except Exception as exc:
        fail("export", exc)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def serve(config_path):
    """Run the HTTP service (config file: key=value lines; env overrides)."""
    try:
        config: dict = {}
        with open(config_path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if line and not line.startswith("#"):
                    key, _, value = line.partition("=")
                    config[key.strip()] = value.strip()
        for key in ("port", "store", "static_dir", "rate_limit", "host", "search_fold"):
            env = os.environ.get(f"SIMILEMINE_{key.upper()}")
            if env:
                config[key] = env
        store = open_store(
            config.get("store", DEFAULT_STORE),
            fold_search=config.get("search_fold", "true").lower() != "false",
        )
        from .service import serve as run_service

        run_service(config, store)
    except Exception as exc:
        fail("serve", exc)


@main.command("user-add")
@click.option("--name", required=True)
@click.option("--role", type=click.Choice(["curator", "admin"]), default="curator")
@click.option("--password", prompt=True, hide_input=True)
@click.option("--store", "store_path", default=DEFAULT_STORE, type=click.Path())
def user_add(name, role, password, store_path):
    """Provision a curator login."""
    try:
        store = open_store(store_path)
        try:
            store.add_user(name, role, password)
        finally:
            store.close()
        log_event(stage="user-add", user=name, role=role)
    except Exception as exc:
        fail("user-add", exc)


if __name__ == "__main__":
    main()
