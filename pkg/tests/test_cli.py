"""End-to-end CLI behaviour: analyze goldens, queries, exports, exit codes."""

import json

from authormine.cli import main
from conftest import (FIXTURE_ALIASES, FIXTURE_LOG, FIXTURE_RELEASES, GOLDEN_DIR)

CSV_NAMES = ["authorship.csv", "workload.csv", "profiles.csv", "network.csv"]


def base_args():
    return ["--log", str(FIXTURE_LOG),
            "--alias-map", str(FIXTURE_ALIASES),
            "--releases", str(FIXTURE_RELEASES),
            "--exclude", "firmware/"]


def run_analyze(out_dir, extra=()):
    return main(["analyze", *base_args(), "-o", str(out_dir), *extra])


class TestAnalyze:
    def test_reproduces_goldens_byte_exact(self, tmp_path):
        assert run_analyze(tmp_path) == 0
        for name in CSV_NAMES + ["manifest.json"]:
            produced = (tmp_path / name).read_bytes()
            golden = (GOLDEN_DIR / name).read_bytes()
            assert produced == golden, f"{name} deviates from golden"

    def test_rerun_is_bit_identical(self, tmp_path):
        first = tmp_path / "one"
        second = tmp_path / "two"
        assert run_analyze(first) == 0
        assert run_analyze(second) == 0
        for name in CSV_NAMES + ["manifest.json"]:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_manifest_outputs_digests_are_consistent(self, tmp_path):
        assert run_analyze(tmp_path) == 0
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        from authormine.reports import sha256_file
        for output in manifest["outputs"]:
            assert sha256_file(tmp_path / output["name"]) == output["sha256"]

    def test_json_mirror(self, tmp_path):
        assert run_analyze(tmp_path, ["--json"]) == 0
        mirror = json.loads((tmp_path / "workload.json").read_text())
        assert mirror[0]["release"] == "v0.1"
        assert mirror[0]["scope"] == "All"
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        names = {o["name"] for o in manifest["outputs"]}
        assert "workload.json" in names

    def test_missing_releases_file_fails_fast(self, tmp_path):
        out = tmp_path / "out"
        code = main(["analyze", "--log", str(FIXTURE_LOG),
                     "--releases", str(tmp_path / "nope.txt"), "-o", str(out)])
        assert code == 2
        assert not out.exists() or not any(out.iterdir())

    def test_invalid_threshold_is_config_error(self, tmp_path):
        code = main(["analyze", *base_args(), "-o", str(tmp_path),
                     "--norm-floor", "0"])
        assert code == 2

    def test_malformed_log_cleans_outputs(self, tmp_path):
        bad_log = tmp_path / "bad.ndjson"
        good = FIXTURE_LOG.read_text().splitlines()
        bad_log.write_text("\n".join(good[:10] + ["{broken"] + good[10:]) + "\n")
        out = tmp_path / "out"
        code = main(["analyze", "--log", str(bad_log),
                     "--releases", str(FIXTURE_RELEASES), "-o", str(out)])
        assert code == 1
        assert not any(out.glob("*.csv"))
        assert not (out / "manifest.json").exists()

    def test_output_dir_env_override(self, tmp_path, monkeypatch):
        target = tmp_path / "from-env"
        monkeypatch.setenv("AUTHORMINE_OUTPUT_DIR", str(target))
        monkeypatch.chdir(tmp_path)
        assert main(["analyze", *base_args()]) == 0
        assert (target / "workload.csv").exists()


class TestAuthors:
    def test_sole_creator(self, capsys):
        code = main(["authors", *base_args(), "lib/string.c", "--release", "v0.3"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines == ["alice@example.org,4.555000,1.000000"]

    def test_two_authors_sorted_by_norm(self, capsys):
        code = main(["authors", *base_args(), "net/core/dev.c", "--release", "v0.3"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("dan@example.org,")
        assert lines[1].startswith("carol@example.org,")
        norms = [float(line.split(",")[2]) for line in lines]
        assert norms == sorted(norms, reverse=True)

    def test_deleted_file_not_live(self, tmp_path, capsys):
        # sound/pci/hda.c is deleted at c032; query the release before re-creation
        releases = tmp_path / "releases.txt"
        releases.write_text("vdel c032\n")
        code = main(["authors", "--log", str(FIXTURE_LOG),
                     "--alias-map", str(FIXTURE_ALIASES),
                     "--releases", str(releases), "--exclude", "firmware/",
                     "sound/pci/hda.c", "--release", "vdel"])
        assert code == 1
        assert "not live at vdel" in capsys.readouterr().err

    def test_unknown_release(self, capsys):
        code = main(["authors", *base_args(), "README", "--release", "v9.9"])
        assert code == 1
        assert "v9.9" in capsys.readouterr().err


class TestStatsAndNetwork:
    def test_stats_stdout_matches_golden(self, capsys):
        assert main(["stats", *base_args()]) == 0
        out = capsys.readouterr().out
        assert out == (GOLDEN_DIR / "workload.csv").read_text()

    def test_stats_release_filter(self, capsys):
        assert main(["stats", *base_args(), "--release", "v0.2"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 1 + 7  # header + seven scopes
        assert all(line.startswith("v0.2,") for line in lines[1:])

    def test_network_stdout_matches_golden(self, capsys):
        assert main(["network", *base_args()]) == 0
        assert capsys.readouterr().out == (GOLDEN_DIR / "network.csv").read_text()

    def test_network_exports(self, tmp_path, capsys):
        edges = tmp_path / "edges.csv"
        pajek = tmp_path / "graph.net"
        code = main(["network", *base_args(), "--release", "v0.3",
                     "--edges", str(edges), "--graph", str(pajek)])
        assert code == 0
        capsys.readouterr()
        edge_lines = edges.read_text().splitlines()
        assert edge_lines[0] == "author_a,author_b,shared_files"
        assert "alice@example.org,eve@example.org,2" in edge_lines
        pajek_text = pajek.read_text()
        assert pajek_text.startswith("*Vertices 6")
        assert "*Edges" in pajek_text

    def test_network_scope_export(self, tmp_path, capsys):
        edges = tmp_path / "edges.csv"
        code = main(["network", *base_args(), "--release", "v0.3",
                     "--scope", "Net", "--edges", str(edges)])
        assert code == 0
        capsys.readouterr()
        lines = edges.read_text().splitlines()
        assert lines[1:] == ["carol@example.org,dan@example.org,1"]

    def test_network_unknown_scope(self, capsys):
        code = main(["network", *base_args(), "--release", "v0.3",
                     "--scope", "Bogus"])
        assert code == 2
        capsys.readouterr()

    def test_export_requires_release(self, tmp_path, capsys):
        code = main(["network", *base_args(), "--edges", str(tmp_path / "e.csv")])
        assert code == 2
        capsys.readouterr()


class TestExportLogHelper:
    def test_prints_invocation(self, capsys):
        assert main(["export-log-helper"]) == 0
        script = capsys.readouterr().out
        assert "git" in script and "--no-merges" in script
        assert "--name-status" in script and "--reverse" in script
        assert "%an" in script and "%ae" in script
