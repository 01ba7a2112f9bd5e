"""Pipeline driver: ingest -> train -> map -> serve -> export.

Every command reads the shared YAML config (see config.py) and accepts
flags that override it.  Exit codes: 0 success, 1 usage or configuration
problem, 2 data error (bad corpus, missing artifact, bad reference),
3 internal error.  With --json, progress is emitted as one JSON object
per line on stdout.
"""

from __future__ import annotations

import json as jsonlib
import sys
from pathlib import Path

import click

from .api import api_config, run_server
from .config import load_config
from .corpus import (BundleConfig, TokenizeRules, build_bundle, load_bundle,
                     load_corpus, save_bundle)
from .errors import ConfigError, DataError, ThemescopeError
from .lda import load_model, save_model, train_lda
from .report import session_report
from .sessions import SessionStore
from .stopwords import ENGLISH_STOPWORDS
from .thememap import build_theme_map, save_theme_map


def _emit(ctx_obj: dict, event: str, message: str, **fields) -> None:
    if ctx_obj["json"]:
        click.echo(jsonlib.dumps({"event": event, **fields}, sort_keys=True))
    else:
        click.echo(message)


def _pick(flag, config_value):
    return config_value if flag is None else flag


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="YAML config file; flags override its values.")
@click.option("--json", "json_progress", is_flag=True, default=False,
              help="Emit machine-readable progress lines.")
@click.version_option(package_name="themescope")
@click.pass_context
def cli(ctx, config_path, json_progress):
    """Explore a document corpus through LDA themes."""
    ctx.obj = {"config": load_config(config_path), "json": json_progress}


@cli.command()
@click.option("--corpus", "corpus_path", type=click.Path(), default=None,
              help="Manifest JSONL file or directory of JSON records.")
@click.option("--format", "corpus_format",
              type=click.Choice(["manifest", "dir"]), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Bundle artifact to write.")
@click.option("--chunks", type=int, default=None,
              help="Chunks per document.")
@click.option("--min-df", type=int, default=None)
@click.option("--max-df", type=float, default=None,
              help="Drop terms in more than this fraction of documents.")
@click.option("--min-token-length", type=int, default=None)
@click.pass_obj
def ingest(obj, corpus_path, corpus_format, out_path, chunks, min_df,
           max_df, min_token_length):
    """Tokenize a corpus, build its vocabulary, and chunk every document."""
    cfg = obj["config"]
    corpus_path = _pick(corpus_path, cfg["corpus"])
    out_path = _pick(out_path, cfg["bundle"])
    bundle_config = BundleConfig(
        chunk_count=_pick(chunks, cfg["chunk_count"]),
        min_df=_pick(min_df, cfg["min_df"]),
        max_df_fraction=_pick(max_df, cfg["max_df_fraction"]),
        min_token_length=_pick(min_token_length, cfg["min_token_length"]),
    )
    corpus = load_corpus(corpus_path, fmt=_pick(corpus_format,
                                                cfg["corpus_format"]))
    rules = TokenizeRules(min_token_length=bundle_config.min_token_length,
                          stopwords=ENGLISH_STOPWORDS)
    bundle = build_bundle(corpus, bundle_config, rules)
    sha = save_bundle(bundle, out_path)
    for doc_id, n_tokens in bundle.excluded:
        _emit(obj, "excluded",
              f"excluded {doc_id}: {n_tokens} tokens is fewer than "
              f"{bundle_config.chunk_count}",
              doc_id=doc_id, tokens=n_tokens)
    _emit(obj, "ingest",
          f"bundled {len(bundle.documents)} documents, "
          f"{len(bundle.chunks)} chunks, "
          f"{len(bundle.vocabulary)} terms -> {out_path}",
          documents=len(bundle.documents), chunks=len(bundle.chunks),
          vocabulary=len(bundle.vocabulary),
          excluded=len(bundle.excluded), bundle=str(out_path), sha256=sha)


@cli.command()
@click.option("--bundle", "bundle_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Model artifact to write.")
@click.option("--topics", type=int, default=None)
@click.option("--alpha", type=float, default=None,
              help="Document-topic prior; defaults to 50/topics.")
@click.option("--beta", type=float, default=None)
@click.option("--iters", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.pass_obj
def train(obj, bundle_path, out_path, topics, alpha, beta, iters, seed):
    """Train the topic model with collapsed Gibbs sampling."""
    cfg = obj["config"]
    bundle_path = _pick(bundle_path, cfg["bundle"])
    out_path = _pick(out_path, cfg["model"])
    iterations = _pick(iters, cfg["iterations"])
    bundle = load_bundle(bundle_path)

    report_every = max(1, iterations // 20)

    def progress(sweep, total, ll):
        if sweep % report_every == 0 or sweep == total:
            _emit(obj, "sweep", f"sweep {sweep}/{total}  loglik {ll:.1f}",
                  sweep=sweep, total=total, log_likelihood=ll)

    model = train_lda(
        bundle,
        k=_pick(topics, cfg["topics"]),
        alpha=_pick(alpha, cfg["alpha"]),
        beta=_pick(beta, cfg["beta"]),
        iterations=iterations,
        seed=_pick(seed, cfg["seed"]),
        progress=progress,
    )
    sha = save_model(model, out_path)
    _emit(obj, "train",
          f"trained {model.k} themes over {model.n_chunks} chunks -> "
          f"{out_path}",
          k=model.k, chunks=model.n_chunks, iterations=model.iterations,
          seed=model.seed, model=str(out_path), sha256=sha)


@cli.command(name="map")
@click.option("--model", "model_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Theme-map artifact to write.")
@click.option("--tau", type=float, default=None,
              help="Paper-presence threshold for co-occurrence.")
@click.option("--clusters", type=int, default=None,
              help="Cluster count; defaults to the largest height gap.")
@click.option("--top-terms", type=int, default=None)
@click.pass_obj
def map_command(obj, model_path, out_path, tau, clusters, top_terms):
    """Cluster themes and lay them out as a hexagon map."""
    cfg = obj["config"]
    model_path = _pick(model_path, cfg["model"])
    out_path = _pick(out_path, cfg["map"])
    model = load_model(model_path)
    tmap = build_theme_map(
        model,
        tau=_pick(tau, cfg["tau"]),
        clusters=_pick(clusters, cfg["clusters"]),
        top_terms=_pick(top_terms, cfg["top_terms"]),
    )
    sha = save_theme_map(tmap, out_path)
    _emit(obj, "map",
          f"mapped {tmap.k} themes into {tmap.tree.n_clusters} clusters -> "
          f"{out_path}",
          k=tmap.k, clusters=tmap.tree.n_clusters,
          empty_themes=list(tmap.empty_themes), map=str(out_path), sha256=sha)


@cli.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--ui-dir", type=click.Path(), default=None,
              help="Static files to serve at /.")
@click.pass_obj
def serve(obj, host, port, ui_dir):
    """Serve the /v1 HTTP API over the trained artifacts."""
    cfg = dict(obj["config"])
    cfg["host"] = _pick(host, cfg["host"])
    cfg["port"] = _pick(port, cfg["port"])
    cfg["ui_dir"] = _pick(ui_dir, cfg["ui_dir"])
    config = api_config(cfg)
    _emit(obj, "serve",
          f"serving on http://{config.host}:{config.port}",
          host=config.host, port=config.port)
    run_server(config)


@cli.command()
@click.argument("session_id")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Report file; defaults to session-<id>.json.")
@click.pass_obj
def export(obj, session_id, out_path):
    """Write one session's selection, excerpt map, wheels, and strategy."""
    cfg = obj["config"]
    bundle = load_bundle(cfg["bundle"])
    model = load_model(cfg["model"])
    store = SessionStore(cfg["sessions"])
    session = store.get(session_id)
    report = session_report(model, bundle, session,
                            theta_min=cfg["theta_min"], tau=cfg["tau"],
                            max_selection=cfg["max_selection"])
    out_path = Path(out_path if out_path is not None
                    else f"session-{session_id}.json")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(jsonlib.dumps(report, indent=2, sort_keys=True),
                        encoding="utf-8")
    _emit(obj, "export", f"wrote session report -> {out_path}",
          session_id=session_id, out=str(out_path))


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(1)
    except click.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except DataError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except ThemescopeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    except Exception as exc:  # noqa: BLE001 - map anything else to exit 3
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()
