"""Command-line interface: analyze, authors, network, stats, export-log-helper."""

from __future__ import annotations

import argparse
import contextlib
import csv
import logging
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator

from . import __version__
from .doa import DoaThresholds, DoaWeights, compute_authorship
from .errors import AuthormineError, ConfigError
from .ingest import (AliasMap, ReleaseTag, apply_path_filters, load_alias_map,
                     load_releases, parse_commit_log, resolve_aliases)
from .network import build_graph
from .patterns import PathMatcher
from .reports import (AUTHORSHIP_HEADER, EDGES_HEADER, NETWORK_HEADER,
                      PROFILES_HEADER, WORKLOAD_HEADER, build_manifest, edge_rows,
                      fmt_float, release_report, scope_name, sha256_file, write_csv,
                      write_json_mirror, write_manifest, write_pajek)
from .snapshot import ReleaseSnapshot, iter_snapshots
from .subsystems import SubsystemRules, default_rules, load_rules, scope_partition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_CONFIG = 2

OUTPUT_DIR_ENV = "AUTHORMINE_OUTPUT_DIR"


@dataclass
class RunConfig:
    log_paths: list[Path]
    releases_path: Path
    alias_map_path: "Path | None" = None
    rules_path: "Path | None" = None
    exclusions: list[str] = field(default_factory=list)
    follow_renames: bool = True
    thresholds: DoaThresholds = field(default_factory=DoaThresholds)
    output_dir: Path = Path("authormine-out")
    json_mirror: bool = False

    # populated by validate()
    releases: list[ReleaseTag] = field(default_factory=list)
    alias_map: AliasMap = field(default_factory=dict)
    rules: "SubsystemRules | None" = None

    def validate(self) -> None:
        """Fail fast: every referenced file must exist and parse."""
        if not self.log_paths:
            raise ConfigError("at least one --log file is required")
        for path in self.log_paths:
            if not path.is_file():
                raise ConfigError(f"log file not found: {path}")
        if not self.releases_path.is_file():
            raise ConfigError(f"releases file not found: {self.releases_path}")
        self.releases = load_releases(self.releases_path)
        if not self.releases:
            raise ConfigError(f"releases file is empty: {self.releases_path}")
        if self.alias_map_path is not None:
            if not self.alias_map_path.is_file():
                raise ConfigError(f"alias map not found: {self.alias_map_path}")
            self.alias_map = load_alias_map(self.alias_map_path)
        if self.rules_path is not None:
            if not self.rules_path.is_file():
                raise ConfigError(f"rules file not found: {self.rules_path}")
            self.rules = load_rules(self.rules_path)
        else:
            self.rules = default_rules()
        PathMatcher(self.exclusions)  # compiles or raises ConfigError

    def settings_dict(self) -> dict:
        return {
            "follow_renames": self.follow_renames,
            "normalized_floor": self.thresholds.normalized_floor,
            "absolute_floor": self.thresholds.absolute_floor,
            "exclusions": list(self.exclusions),
            "json_mirror": self.json_mirror,
        }

    def input_descriptors(self) -> list[dict]:
        items = [{"role": "log", "name": p.name, "sha256": sha256_file(p)}
                 for p in self.log_paths]
        if self.alias_map_path is not None:
            items.append({"role": "alias_map", "name": self.alias_map_path.name,
                          "sha256": sha256_file(self.alias_map_path)})
        if self.rules_path is not None:
            items.append({"role": "rules", "name": self.rules_path.name,
                          "sha256": sha256_file(self.rules_path)})
        else:
            ref = resources.files("authormine.data").joinpath("subsystem_rules.tsv")
            with resources.as_file(ref) as path:
                items.append({"role": "rules", "name": "<bundled-default>",
                              "sha256": sha256_file(path)})
        items.append({"role": "releases", "name": self.releases_path.name,
                      "sha256": sha256_file(self.releases_path)})
        return items


@contextlib.contextmanager
def _snapshot_stream(config: RunConfig, releases: "list[ReleaseTag] | None" = None,
                     ) -> Iterator[Iterator[ReleaseSnapshot]]:
    """Open the log files and yield the snapshot iterator over them."""
    with contextlib.ExitStack() as stack:
        handles = [stack.enter_context(open(p, "rb")) for p in config.log_paths]

        def records():
            for handle in handles:
                yield from parse_commit_log(handle)

        stream = resolve_aliases(records(), config.alias_map)
        stream = apply_path_filters(stream, config.exclusions)
        yield iter_snapshots(stream, releases if releases is not None else config.releases,
                             follow_renames=config.follow_renames)


def cmd_analyze(config: RunConfig) -> int:
    config.validate()
    out_dir = config.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_outputs = [
        ("authorship", AUTHORSHIP_HEADER),
        ("workload", WORKLOAD_HEADER),
        ("profiles", PROFILES_HEADER),
        ("network", NETWORK_HEADER),
    ]
    written: list[Path] = []
    handles = {}
    mirrors: dict[str, list] = {name: [] for name, _ in csv_outputs}
    try:
        for name, header in csv_outputs:
            path = out_dir / f"{name}.csv"
            fh = open(path, "w", encoding="utf-8", newline="")
            written.append(path)
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            handles[name] = (fh, writer)

        with _snapshot_stream(config) as snapshots:
            for snap in snapshots:
                report = release_report(snap, config.rules, config.thresholds,
                                        DoaWeights())
                for name, rows in (("authorship", report.authorship_rows),
                                   ("workload", report.workload_rows),
                                   ("profiles", report.profile_rows),
                                   ("network", report.network_rows)):
                    handles[name][1].writerows(rows)
                    if config.json_mirror:
                        mirrors[name].extend(rows)
                logger.info("release %s done", snap.release.name)

        for fh, _ in handles.values():
            fh.close()
        handles.clear()

        if config.json_mirror:
            for name, header in csv_outputs:
                path = out_dir / f"{name}.json"
                written.append(path)
                with open(path, "w", encoding="utf-8", newline="\n") as fh:
                    write_json_mirror(fh, header, mirrors[name])

        outputs = [{"name": p.name, "sha256": sha256_file(p)}
                   for p in sorted(written, key=lambda p: p.name)]
        manifest = build_manifest(__version__, config.settings_dict(),
                                  config.input_descriptors(), outputs)
        with open(out_dir / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
            write_manifest(fh, manifest)
    except BaseException:
        for fh, _ in handles.values():
            fh.close()
        for path in written:
            with contextlib.suppress(OSError):
                path.unlink()
        with contextlib.suppress(OSError):
            (out_dir / "manifest.json").unlink()
        raise
    return EXIT_OK


def _find_release(config: RunConfig, name: str) -> ReleaseTag:
    for tag in config.releases:
        if tag.name == name:
            return tag
    raise AuthormineError(f"unknown release {name!r} (not in {config.releases_path})")


def cmd_authors(config: RunConfig, file_path: str, release_name: str) -> int:
    config.validate()
    tag = _find_release(config, release_name)
    with _snapshot_stream(config, releases=[tag]) as snapshots:
        snap = next(snapshots)
    authorship = compute_authorship(snap, config.thresholds)
    try:
        file_auth = authorship.for_path(file_path)
    except KeyError:
        raise AuthormineError(f"file {file_path!r} not live at {release_name}") from None
    scores = [s for s in file_auth.scores if s.is_author]
    scores.sort(key=lambda s: (-s.doa_norm, s.developer.email))
    for s in scores:
        print(f"{s.developer.email},{fmt_float(s.doa_abs)},{fmt_float(s.doa_norm)}")
    return EXIT_OK


def cmd_stats(config: RunConfig, release_name: "str | None") -> int:
    config.validate()
    if release_name is not None:
        _find_release(config, release_name)
    rows = []
    with _snapshot_stream(config) as snapshots:
        for snap in snapshots:
            if release_name is not None and snap.release.name != release_name:
                continue
            report = release_report(snap, config.rules, config.thresholds, DoaWeights())
            rows.extend(report.workload_rows)
            if release_name is not None:
                break
    write_csv(sys.stdout, WORKLOAD_HEADER, rows)
    return EXIT_OK


def cmd_network(config: RunConfig, release_name: "str | None",
                scope: "str | None", edges_path: "Path | None",
                graph_path: "Path | None") -> int:
    config.validate()
    if release_name is not None:
        _find_release(config, release_name)
    if (edges_path or graph_path) and release_name is None:
        raise ConfigError("--edges/--graph exports require --release")
    if scope is not None and scope != scope_name(None) \
            and scope not in config.rules.labels:
        raise ConfigError(f"unknown scope {scope!r}; expected one of "
                          f"{(scope_name(None),) + config.rules.labels}")
    rows = []
    with _snapshot_stream(config) as snapshots:
        for snap in snapshots:
            if release_name is not None and snap.release.name != release_name:
                continue
            report = release_report(snap, config.rules, config.thresholds, DoaWeights())
            rows.extend(report.network_rows)
            if release_name is not None and (edges_path or graph_path):
                authorship = compute_authorship(snap, config.thresholds)
                partition = scope_partition(snap, config.rules)
                key = None if scope in (None, scope_name(None)) else scope
                graph = build_graph(authorship, partition[key])
                if edges_path:
                    with open(edges_path, "w", encoding="utf-8", newline="") as fh:
                        write_csv(fh, EDGES_HEADER, edge_rows(graph))
                if graph_path:
                    with open(graph_path, "w", encoding="utf-8", newline="\n") as fh:
                        write_pajek(fh, graph)
            if release_name is not None:
                break
    write_csv(sys.stdout, NETWORK_HEADER, rows)
    return EXIT_OK


def cmd_export_log_helper() -> int:
    ref = resources.files("authormine.data").joinpath("export_log.sh")
    sys.stdout.write(ref.read_text(encoding="utf-8"))
    return EXIT_OK


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--log", action="append", default=[], metavar="FILE",
                        help="NDJSON commit log, oldest first; repeatable, "
                             "files are concatenated in order")
    parser.add_argument("--releases", metavar="FILE", required=True,
                        help="release list: 'tag_name commit_id' per line, oldest first")
    parser.add_argument("--alias-map", metavar="FILE",
                        help="identity alias map: 'name <email> = name <email>' per line")
    parser.add_argument("--rules", metavar="FILE",
                        help="subsystem rules (pattern<TAB>label); bundled Linux-style "
                             "decomposition by default")
    parser.add_argument("--exclude", action="append", default=[], metavar="PATTERN",
                        help="drop changes under this path prefix or glob; repeatable")
    parser.add_argument("--no-follow-renames", dest="follow_renames",
                        action="store_false", default=True,
                        help="treat renames as delete plus fresh creation")
    parser.add_argument("--norm-floor", type=float, default=0.75, metavar="X",
                        help="normalized score floor, author rule is strictly above "
                             "(default 0.75)")
    parser.add_argument("--abs-floor", type=float, default=3.293, metavar="X",
                        help="absolute score floor, inclusive (default 3.293)")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    try:
        thresholds = DoaThresholds(args.norm_floor, args.abs_floor)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    output_dir = getattr(args, "output_dir", None)
    if output_dir is None:
        output_dir = os.environ.get(OUTPUT_DIR_ENV, "authormine-out")
    return RunConfig(
        log_paths=[Path(p) for p in args.log],
        releases_path=Path(args.releases),
        alias_map_path=Path(args.alias_map) if args.alias_map else None,
        rules_path=Path(args.rules) if args.rules else None,
        exclusions=list(args.exclude),
        follow_renames=args.follow_renames,
        thresholds=thresholds,
        output_dir=Path(output_dir),
        json_mirror=getattr(args, "json", False),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="authormine",
        description="Mine commit logs for file authorship, workload and "
                    "collaboration analytics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full pipeline and write report CSVs")
    _add_config_flags(p)
    p.add_argument("-o", "--output-dir", metavar="DIR",
                   help=f"report directory (default 'authormine-out'; "
                        f"overridable via ${OUTPUT_DIR_ENV})")
    p.add_argument("--json", action="store_true",
                   help="also write a JSON mirror of each CSV")

    p = sub.add_parser("authors", help="list the authors of one file at a release")
    _add_config_flags(p)
    p.add_argument("file", help="repo-relative path of the file")
    p.add_argument("--release", required=True, metavar="TAG")

    p = sub.add_parser("stats", help="print the workload statistics CSV to stdout")
    _add_config_flags(p)
    p.add_argument("--release", metavar="TAG", help="restrict to one release")

    p = sub.add_parser("network", help="print the network metrics CSV to stdout")
    _add_config_flags(p)
    p.add_argument("--release", metavar="TAG", help="restrict to one release")
    p.add_argument("--scope", metavar="LABEL",
                   help="scope for --edges/--graph exports (default All)")
    p.add_argument("--edges", metavar="FILE", help="write the edge list CSV here")
    p.add_argument("--graph", metavar="FILE",
                   help="write a plain-text vertex/edge list (Pajek format) here")

    sub.add_parser("export-log-helper",
                   help="print the shell script that exports a git history "
                        "to the NDJSON log format")
    return parser


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr)
    try:
        if args.command == "export-log-helper":
            return cmd_export_log_helper()
        config = _config_from_args(args)
        if args.command == "analyze":
            return cmd_analyze(config)
        if args.command == "authors":
            return cmd_authors(config, args.file, args.release)
        if args.command == "stats":
            return cmd_stats(config, args.release)
        if args.command == "network":
            return cmd_network(config, args.release, args.scope,
                               Path(args.edges) if args.edges else None,
                               Path(args.graph) if args.graph else None)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"authormine: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AuthormineError, ValueError, OSError) as exc:
        print(f"authormine: error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
