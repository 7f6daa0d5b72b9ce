"""Graph-of-groups commands: entropy, minimal metric and covering check."""

import typer

from app.commands.common import ExitCode, InputFile, checks, emit, exact, read_document, session
from app.schemas.results import CoverCheckResult, GogEntropyResult, GogMinimizeResult, InequalitySchema
from graph_entropy.gog import (
    build_cover,
    build_gog,
    check_covering,
    covering_inequality,
    degree,
    gog_entropy,
    gog_minimal_metric,
    gog_volume,
    vertex_volume,
)


def gog_entropy_command(ctx: typer.Context, graph_file: InputFile) -> None:
    """Volume entropy of the Bass-Serre tree of a graph of groups."""
    run = session(ctx).start("gog-entropy", graph_file)
    gog = build_gog(read_document(graph_file))
    solution = gog_entropy(gog, run.entropy_config())
    emit(
        ctx,
        GogEntropyResult(
            h=solution.h,
            residual=solution.residual,
            bracket=solution.bracket,
            volume=exact(gog_volume(gog)),
            vertex_volume=exact(vertex_volume(gog)),
            degrees={x: degree(gog, x) for x in gog.graph.vertices},
            vector=solution.vector,
        ),
    )


def gog_minimize(ctx: typer.Context, graph_file: InputFile) -> None:
    """Closed-form minimum; lengths in the document are not needed."""
    session(ctx).start("gog-minimize", graph_file)
    gog = build_gog(read_document(graph_file))
    result = gog_minimal_metric(gog)
    emit(
        ctx,
        GogMinimizeResult(
            h_min=result.h_min,
            degrees={x: degree(gog, x) for x in gog.graph.vertices},
            lengths=dict(result.lengths),
            perron=dict(result.perron),
            z=dict(result.z),
        ),
    )


def cover_check(ctx: typer.Context, cover_file: InputFile) -> None:
    """Check a covering and compare both sides of the covering inequality."""
    run = session(ctx).start("cover-check", cover_file)
    cover = build_cover(read_document(cover_file))
    report = check_covering(cover)

    inequality = None
    if report.ok and cover.source.has_lengths:
        result = covering_inequality(cover, config=run.entropy_config())
        inequality = InequalitySchema(
            lhs=result.lhs,
            rhs=result.rhs,
            gap=result.gap,
            equality=result.equality,
            proportional=result.proportional,
            scale=result.scale,
            source_h_min=result.source_h_min,
            target_h_min=result.target_h_min,
        )
    payload = CoverCheckResult(ok=report.ok, sheets=report.sheets, checks=checks(report.checks), inequality=inequality)
    emit(ctx, payload)
    if not report.ok:
        raise typer.Exit(code=ExitCode.VALIDATION)


def register(app: typer.Typer) -> None:
    app.command("gog-entropy")(gog_entropy_command)
    app.command("gog-minimize")(gog_minimize)
    app.command("cover-check")(cover_check)
