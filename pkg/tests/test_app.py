"""Tests for the CLI application setup and exit statuses."""

from app.main import app, run
from tests.conftest import THETA


class TestAppSetup:
    def test_every_command_is_registered(self):
        # Given: the typer application
        # When: listing its commands
        names = {command.name for command in app.registered_commands}

        # Then: one entry per command
        assert names == {
            "validate",
            "volume",
            "reduce",
            "entropy",
            "oracle",
            "minimize",
            "gog-entropy",
            "gog-minimize",
            "cover-check",
        }

    def test_help_exits_zero(self, cli):
        status, out, _ = cli("--help")
        assert status == 0
        assert "entropy" in out


class TestExitStatus:
    def test_unknown_command_is_usage_error(self, cli):
        # Given: a command that does not exist
        # When: running it
        status, _, err = cli("bogus")

        # Then: exit 3 with a message
        assert status == 3
        assert "error" in err

    def test_missing_input_file_is_usage_error(self, cli, tmp_path):
        status, _, _ = cli("entropy", tmp_path / "absent.yml")
        assert status == 3

    def test_non_positive_tolerance_is_usage_error(self, cli, write_document):
        status, _, err = cli("--tol-root", "-1", "entropy", write_document(THETA))
        assert status == 3
        assert "invalid options" in err

    def test_bad_radius_is_usage_error(self, cli, write_document):
        status, _, _ = cli("--r-max", "0", "oracle", write_document(THETA))
        assert status == 3

    def test_bad_format_is_usage_error(self, cli, write_document):
        status, _, _ = cli("--format", "xml", "entropy", write_document(THETA))
        assert status == 3

    def test_unreadable_yaml_is_validation_error(self, cli, tmp_path):
        # Given: a file that is not YAML
        path = tmp_path / "broken.yml"
        path.write_text("vertices: [a, b\n")

        # Then: exit 1 naming the line
        status, _, err = cli("entropy", path)
        assert status == 1
        assert "line" in err

    def test_run_reads_sys_argv(self, monkeypatch, capsys, write_document):
        monkeypatch.setattr("sys.argv", ["graph-entropy", "volume", write_document(THETA)])
        assert run() == 0
        assert "volume" in capsys.readouterr().out
