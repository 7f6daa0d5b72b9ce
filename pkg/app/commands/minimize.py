"""The minimize command: closed-form minimal metric, optional sampling check."""

import typer

from app.commands.common import InputFile, emit, read_document, session
from app.schemas.results import MinimizeResult, SamplingResult
from graph_entropy.errors import InternalConsistencyError
from graph_entropy.graph import build_graph, series_reduce
from graph_entropy.optimizer import minimize_with_reduction, sample_minimality


def minimize(ctx: typer.Context, graph_file: InputFile) -> None:
    """Minimal entropy over volume-one metrics and its minimizer."""
    run = session(ctx).start("minimize", graph_file)
    config = run.entropy_config()
    g = build_graph(read_document(graph_file))
    result = minimize_with_reduction(g)

    sampling = None
    if run.samples is not None:
        report = sample_minimality(series_reduce(g).graph, run.samples, run.seed, config)
        if report.violations:
            raise InternalConsistencyError(
                f"{report.violations} sampled metrics fell below h_min = {report.h_min:.12g}"
            )
        sampling = SamplingResult(
            samples=report.samples,
            seed=report.seed,
            min_entropy=report.min_entropy,
            violations=report.violations,
            unexpected_equalities=report.unexpected_equalities,
        )

    emit(
        ctx,
        MinimizeResult(
            h_min=result.h_min,
            canonical=result.canonical,
            lengths=dict(result.lengths),
            perron=dict(result.perron),
            z=dict(result.z),
            chains={k: list(v) for k, v in result.chains.items()},
            chain_totals=dict(result.chain_totals),
            sampling=sampling,
        ),
    )


def register(app: typer.Typer) -> None:
    app.command("minimize")(minimize)
