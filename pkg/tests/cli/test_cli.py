"""
CLI tests: commands, output and exit codes.
"""
import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from app.cli import app

runner = CliRunner()

SHIPPED = sorted((Path(__file__).parents[2] / "protocols").glob("*.caa"))


@pytest.fixture
def write(tmp_path):
    """Write protocol text to a temporary .caa file."""

    def _write(text: str, name: str = "p.caa") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def example(protocols_dir, name: str) -> str:
    return str(protocols_dir / f"{name}.caa")


class TestValidate:

    def test_clean_file(self, protocols_dir):
        """Test that a well-formed protocol validates."""
        result = runner.invoke(app, ["validate", example(protocols_dir, "mem")])
        assert result.exit_code == 0
        assert "ok" in result.output

    def test_mixed_state(self, write):
        """Test that a mixed state is reported with exit code 1."""
        path = write(
            "machine #1 { initial a; a -- ?x -> b; a -- #2!y -> c; }\nmachine #2 { initial o; }"
        )
        result = runner.invoke(app, ["validate", path])
        assert result.exit_code == 1
        assert "MixedState" in result.output

    def test_garbage(self, write):
        """Test that unparsable text exits with code 2."""
        result = runner.invoke(app, ["validate", write("this is not a protocol")])
        assert result.exit_code == 2
        assert "PARSE_001" in result.output

    def test_reserved_state_name(self, write):
        """Test that a keyword used as a state name gets a clear diagnostic."""
        path = write("machine #1 { initial a; a -- #2!x -> final; }")
        result = runner.invoke(app, ["validate", path])
        assert result.exit_code == 2
        assert "`final` is a reserved word" in result.output

    def test_strict_promotes_warnings(self, write):
        """Test that --strict turns warnings into failures."""
        path = write("machine #1 { initial a; states a lost; }")
        assert runner.invoke(app, ["validate", path]).exit_code == 0
        assert runner.invoke(app, ["validate", "--strict", path]).exit_code == 1


class TestExplore:

    def test_pingpong(self, protocols_dir):
        """Test exploring ping/pong."""
        result = runner.invoke(app, ["explore", example(protocols_dir, "pingpong")])
        assert result.exit_code == 0
        assert "maximal traces: 1" in result.output
        assert "verdict: Complete" in result.output

    def test_bound_exits_3(self, protocols_dir):
        """Test that hitting a bound exits with code 3."""
        path = example(protocols_dir, "pingpong")
        result = runner.invoke(app, ["explore", "--max-depth", "1", path])
        assert result.exit_code == 3
        assert "BoundExceeded(max_depth)" in result.output

    def test_depth_bound_equal_to_trace_length(self, protocols_dir):
        """Test that a depth bound equal to the longest trace still completes."""
        path = example(protocols_dir, "pingpong")
        result = runner.invoke(app, ["explore", "--max-depth", "4", path])
        assert result.exit_code == 0
        assert "verdict: Complete" in result.output

    @pytest.mark.slow
    @pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.stem)
    def test_json_traces_are_independent_of_jobs(self, path):
        """Test that repeated runs with any worker count print the same traces."""
        outputs = {
            runner.invoke(
                app, ["explore", "--format", "json", "--traces", "--jobs", jobs, str(path)]
            ).output
            for jobs in ["1", "8"] * 10
        }
        assert len(outputs) == 1
        document = json.loads(outputs.pop())
        assert len(document["traces"]) >= max(document["maximal_traces"], 1)

    def test_traces_and_dot(self, protocols_dir, tmp_path):
        """Test printing traces and writing the Graphviz file."""
        dot = tmp_path / "graph.dot"
        path = example(protocols_dir, "pingpong")
        result = runner.invoke(app, ["explore", "--traces", "--dot", str(dot), path])
        assert result.exit_code == 0
        assert "trace 0" in result.output
        assert "% #2 sends pong to #1" in result.output
        assert dot.read_text().startswith("digraph")

    def test_strict_payloads(self, write):
        """Test that --strict-payloads rejects open payloads."""
        path = write(
            "machine #1 { initial a; a -- #2!{v, Y + 1} -> b; }\nmachine #2 { initial a; }"
        )
        assert runner.invoke(app, ["explore", path]).exit_code == 0
        result = runner.invoke(app, ["explore", "--strict-payloads", path])
        assert result.exit_code == 1
        assert "STEP_003" in result.output


class TestRun:

    def test_same_seed_same_output(self, protocols_dir):
        """Test that a seed makes the run repeatable."""
        path = example(protocols_dir, "mem4")
        first = runner.invoke(app, ["run", "--seed", "5", path])
        second = runner.invoke(app, ["run", "--seed", "5", path])
        assert first.exit_code == 0
        assert first.output == second.output

    def test_seed_printed_when_omitted(self, protocols_dir):
        """Test that the chosen seed is printed when none is given."""
        result = runner.invoke(app, ["run", example(protocols_dir, "pingpong")])
        assert result.exit_code == 0
        assert "seed: " in result.output
        assert "% #1 receives pong" in result.output


class TestAnalysis:

    def test_races_found(self, protocols_dir):
        """Test that races exit with code 4."""
        result = runner.invoke(app, ["races", example(protocols_dir, "fork")])
        assert result.exit_code == 4
        assert "race at machine #0, state r" in result.output

    def test_race_free(self, protocols_dir):
        """Test a race-free protocol."""
        assert runner.invoke(app, ["races", example(protocols_dir, "pingpong")]).exit_code == 0

    def test_races_bounded(self, protocols_dir):
        """Test that race detection refuses a bounded exploration."""
        result = runner.invoke(app, ["races", "--max-depth", "1", example(protocols_dir, "fork")])
        assert result.exit_code == 3
        assert "ANA_001" in result.output

    @pytest.mark.parametrize("name, tier", [
        ("mem4", "StronglyCompatible"),
        ("weak", "WeaklyCompatible"),
        ("lacking", "CommunicationLacking"),
        ("incompatible", "Incompatible"),
    ])
    def test_classify(self, protocols_dir, name, tier):
        """Test the tier printed for each shipped example."""
        result = runner.invoke(app, ["classify", example(protocols_dir, name)])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == tier

    def test_convergence(self, protocols_dir):
        """Test a converging two-machine protocol."""
        result = runner.invoke(app, ["convergence", example(protocols_dir, "twosends")])
        assert result.exit_code == 0
        assert result.output.startswith("Converges (2 traces")

    def test_convergence_outside_binary_class(self, protocols_dir):
        """Test that convergence rejects a three-machine protocol."""
        result = runner.invoke(app, ["convergence", example(protocols_dir, "fork")])
        assert result.exit_code == 1
        assert "ANA_002" in result.output


class TestCodegen:

    def test_writes_modules(self, protocols_dir, tmp_path):
        """Test that codegen creates the output directory and one module per machine."""
        out = tmp_path / "erl" / "nested"
        result = runner.invoke(app, ["codegen", "--out", str(out), example(protocols_dir, "mem")])
        assert result.exit_code == 0
        source = (out / "caa_m0.erl").read_text()
        assert source.index("{get, V_P}") < source.index("{put, V_S}")
