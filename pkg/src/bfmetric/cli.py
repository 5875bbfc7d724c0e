"""Command-line surface: rank | check | game | gen | orbits | hom | serve."""
from __future__ import annotations

import json
import re
import sys

import click

from .analysis import analyze, table_export
from .corpus import exhaustive_spaces, random_spaces
from .crosscheck import check_space
from .errors import (
    BFMetricError,
    IllegalMove,
    ParseError,
    SpaceTooLarge,
)
from .game import Challenge, Response, apply_move, engine_move, new_game, solve
from .isometry import orbits as compute_orbits
from .isometry import is_ultrahomogeneous
from .refine import table_for
from .space import decode, encode, generate


def _load_space(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return decode(fh.read())
    except SpaceTooLarge as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
    except (OSError, BFMetricError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SpaceTooLarge as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


def _parse_tuple(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _parse_clock(text):
    if text == "inf":
        return None
    try:
        value = int(text)
    except ValueError:
        raise click.BadParameter(f"clock must be a natural number or 'inf', got {text!r}")
    if value < 0:
        raise click.BadParameter("clock must be nonnegative")
    return value


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "machine"]), default="text"
)


@click.group()
def main():
    """Back-and-forth analysis of finite rational metric spaces."""


@main.command("rank")
@click.argument("file", type=click.Path())
@click.option("--pairs", is_flag=True, help="list every map with a finite rank")
@click.option("--literal-sup", is_flag=True, help="also print the unrestricted supremum")
@format_option
def cmd_rank(file, pairs, literal_sup, fmt):
    """Scott rank, stabilization index, group order and homogeneity."""
    space = _load_space(file)
    report = _guard(analyze, space)
    if fmt == "machine":
        out = report.to_dict()
        if pairs:
            out["refinement"] = _guard(table_export, space)
        click.echo(json.dumps(out, indent=2))
        return
    click.echo(
        f"sr = {report.scott_rank}, alpha* = {report.alpha_star}, "
        f"|Iso| = {report.group_order}, "
        f"ultrahomogeneous: {'yes' if report.ultrahomogeneous else 'no'}"
    )
    if report.witness is not None:
        click.echo(f"witness: {report.witness}")
    click.echo(f"level sizes: {list(report.level_sizes)}")
    if literal_sup:
        click.echo(f"sr_literal = {report.sr_literal}")
    if pairs:
        table = _guard(table_export, space)
        for entry in table["maps"]:
            if entry["rank"] != "top":
                click.echo(f"  {entry['map']} rank {entry['rank']}")


_CORPUS_RE = re.compile(r"n<=(\d+)(?:,distances=\{([\d,]+)\})?$")


@main.command("check")
@click.argument("file", type=click.Path(), required=False)
@click.option("--corpus", "corpus_spec", help="e.g. 'n<=4,distances={1,2,3}'")
@click.option("--random", "random_spec", nargs=3, type=int, default=None,
              help="COUNT N SEED: add seeded random spaces")
@format_option
def cmd_check(file, corpus_spec, random_spec, fmt):
    """Cross-validate refinement, game tree and autoisometry search."""
    spaces = []
    if file:
        spaces.append(("file", _load_space(file)))
    if corpus_spec:
        m = _CORPUS_RE.match(corpus_spec.replace(" ", ""))
        if not m:
            raise click.BadParameter(f"bad corpus spec {corpus_spec!r}")
        max_n = int(m.group(1))
        distances = tuple(int(x) for x in (m.group(2) or "1,2,3").split(","))
        for i, s in enumerate(exhaustive_spaces(max_n, distances)):
            spaces.append((f"corpus[{i}]", s))
    if random_spec:
        count, n, seed = random_spec
        for i, s in enumerate(random_spaces(count, n, seed)):
            spaces.append((f"random[{i}]", s))
    if not spaces:
        raise click.UsageError("give a file, --corpus or --random")

    failures = 0
    results = []
    for name, s in spaces:
        mismatches = _guard(check_space, s, game_tree=s.n <= 5)
        results.append({"space": name, "n": s.n, "mismatches": mismatches})
        if mismatches:
            failures += 1
            for msg in mismatches:
                click.echo(f"{name}: MISMATCH {msg}", err=True)
    if fmt == "machine":
        click.echo(json.dumps({"spaces": results, "failures": failures}, indent=2))
    elif failures == 0:
        click.echo(
            f"{len(spaces)} space(s): maps agree at all levels; "
            "EF(inf) = autoisometry: ok"
        )
    else:
        click.echo(f"{failures} of {len(spaces)} space(s) FAILED", err=True)
    if failures:
        sys.exit(3)


def _describe_move(move):
    if isinstance(move, Response):
        return f"II answers {move.point}"
    if move.ordinal is None:
        return f"I plays ({move.side}, {move.point})"
    return f"I plays ({move.ordinal}, {move.side}, {move.point})"


@main.command("game")
@click.argument("file", type=click.Path())
@click.option("--a", "a_text", default="", help="left tuple, e.g. '0,2'")
@click.option("--b", "b_text", default="", help="right tuple")
@click.option("--clock", "clock_text", default="inf", help="natural number or 'inf'")
@click.option("--role", type=click.Choice(["I", "II"]), default="I",
              help="which player the human controls (interactive mode)")
@click.option("--interactive", is_flag=True)
@format_option
def cmd_game(file, a_text, b_text, clock_text, role, interactive, fmt):
    """Solve the matching game on a tuple pair, or play it out."""
    space = _load_space(file)
    a, b = _parse_tuple(a_text), _parse_tuple(b_text)
    clock = _parse_clock(clock_text)
    if len(a) != len(b):
        raise click.BadParameter("--a and --b must have equal length")

    if not interactive:
        table = _guard(table_for, space)
        if space.n <= 6:
            winner = _guard(solve, space, a, b, clock).winner
        else:
            # game tree is infeasible; fall back to the refinement verdict
            from .partial_map import is_partial_isometry, normalize

            p = normalize(a, b)
            if p is None or not is_partial_isometry(space, p):
                winner = "I"
            elif clock is None:
                winner = "II" if table.rank_of(p).is_top else "I"
            else:
                winner = "II" if table.in_level(p, clock) else "I"
        # principal line under the engine's optimal strategy on both sides
        state = new_game(space, a, b, clock)
        line = []
        rounds = 0
        while state.phase != "over" and rounds < 4 * space.n:
            move = engine_move(state, table)
            line.append(_describe_move(move))
            state = apply_move(state, move)
            rounds += 1
        if fmt == "machine":
            click.echo(json.dumps({"winner": winner, "line": line}, indent=2))
            return
        if clock == 0:
            click.echo("Player II wins (0-clock: base map is a partial isometry)"
                       if winner == "II" else "Player I wins (base map is not a partial isometry)")
            return
        suffix = f"; line: {'; '.join(line)}" if line and winner == "I" else ""
        click.echo(f"Player {winner} wins{suffix}")
        return

    # interactive play
    table = _guard(table_for, space)
    state = new_game(space, a, b, clock)
    click.echo(f"starting map: {state.current}")
    while state.phase != "over":
        if state.to_move == role:
            try:
                if state.phase == "await_challenge":
                    raw = click.prompt(
                        "your challenge"
                        + (" (ordinal side point)" if clock is not None else " (side point)")
                    )
                    parts = raw.split()
                    if clock is not None:
                        move = Challenge(int(parts[2]), parts[1].upper(), int(parts[0]))
                    else:
                        move = Challenge(int(parts[1]), parts[0].upper())
                else:
                    move = Response(int(click.prompt("your response (point)")))
                state = apply_move(state, move)
            except (IllegalMove, ValueError, IndexError) as e:
                click.echo(f"illegal move: {e}")
                continue
        else:
            move = engine_move(state, table)
            click.echo(f"engine: {_describe_move(move)}")
            state = apply_move(state, move)
        click.echo(f"map: {state.current}, clock: {'inf' if state.clock is None else state.clock}")
    click.echo(f"Player {state.winner} wins")


@main.command("gen")
@click.option("--kind", type=click.Choice(["path", "cycle", "random_l1", "random_graph"]),
              required=True)
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None)
def cmd_gen(kind, n, seed, out):
    """Generate a space and print (or write) its canonical document."""
    try:
        space = generate(kind, {"n": n}, seed)
    except BFMetricError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    text = encode(space)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command("orbits")
@click.argument("file", type=click.Path())
@click.option("--k", type=int, default=1)
@format_option
def cmd_orbits(file, k, fmt):
    """Orbits of injective k-tuples under the autoisometry group."""
    space = _load_space(file)
    classes = _guard(compute_orbits, space, k)
    if fmt == "machine":
        click.echo(json.dumps({"k": k, "orbits": [[list(t) for t in c] for c in classes]}))
        return
    for c in classes:
        click.echo("{" + ", ".join(str(t) if k > 1 else str(t[0]) for t in c) + "}")


@main.command("hom")
@click.argument("file", type=click.Path())
@format_option
def cmd_hom(file, fmt):
    """Ultrahomogeneity check."""
    space = _load_space(file)
    ultra = _guard(is_ultrahomogeneous, space)
    if fmt == "machine":
        click.echo(json.dumps({"ultrahomogeneous": ultra}))
    else:
        click.echo(f"ultrahomogeneous: {'yes' if ultra else 'no'}")


@main.command("serve")
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--static-dir", type=click.Path(), default=None)
@click.option("--dump", is_flag=True, help="expose GET /dump with session snapshots")
def cmd_serve(port, host, static_dir, dump):
    """Run the analysis and game-session service."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(static_dir=static_dir, enable_dump=dump)
        uvicorn.run(app, host=host, port=port)
    except Exception as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
