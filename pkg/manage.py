#!/usr/bin/env python3
"""
Management CLI for the CAA workbench.
"""
import os
import subprocess
from pathlib import Path

import typer
from rich.console import Console

from app.constants.common import PROTOCOL_FILE_SUFFIX

app = typer.Typer(help="Management script for the CAA workbench.")
console = Console()


@app.command()
def run(
    env: str = typer.Option("dev", help="Environment to run in (dev/prod)"),
    reload: bool = typer.Option(True, help="Enable auto-reload (dev only)"),
    host: str = typer.Option("0.0.0.0", help="Host to bind to"),
    port: int = typer.Option(8000, help="Port to bind to"),
):
    """Run the API server locally."""
    cmd = ["uvicorn", "app.main:app", "--host", host, "--port", str(port)]
    if env == "dev" and reload:
        cmd.append("--reload")

    console.print(f"[green]Starting server in {env} mode...[/green]")
    subprocess.run(cmd)


@app.command(context_settings={"allow_extra_args": True, "ignore_unknown_options": True})
def test(
    ctx: typer.Context,
    ci: bool = typer.Option(False, "--ci", help="Derandomized hypothesis profile"),
    watch: bool = typer.Option(False, help="Watch for changes (requires pytest-watch)"),
):
    """Run the test suite."""
    console.print("[green]Running tests locally...[/green]")
    cmd = ["ptw"] if watch else ["pytest"]
    cmd.extend(ctx.args)

    # Set PYTHONPATH to current directory to resolve 'app' module
    env = os.environ.copy()
    env["PYTHONPATH"] = "."
    if ci:
        env["HYPOTHESIS_PROFILE"] = "ci"
    raise typer.Exit(subprocess.run(cmd, env=env).returncode)


@app.command("check:examples")
def check_examples(
    directory: Path = typer.Argument(Path("protocols"), help="Directory of protocol files"),
):
    """Validate every shipped example protocol."""
    failed = 0
    files = sorted(directory.glob(f"*{PROTOCOL_FILE_SUFFIX}"))
    for path in files:
        result = subprocess.run(["caa", "validate", str(path)], capture_output=True, text=True)
        if result.returncode == 0:
            console.print(f"  [green]ok[/green]    {path.name}")
        else:
            failed += 1
            reason = result.stdout.strip() or result.stderr.strip()
            console.print(f"  [red]fail[/red]  {path.name}: {reason}")
    console.print(f"\n{len(files) - failed}/{len(files)} examples valid")
    raise typer.Exit(1 if failed else 0)


if __name__ == "__main__":
    app()
