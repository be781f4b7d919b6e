"""Preprocessing stats document and atomic file writes.

The stats document is a single self-describing JSON object:

    {
      "schema": "cnfkit-stats/1",
      "clauses_before": 12,
      "clauses_after": 7,
      "techniques": {
        "bce": {"clauses_removed": 5, "clauses_added": 0,
                "literals_added": 3, "rounds": 2, "seconds": 0.0012}
      }
    }

Counters always satisfy: total removed - total added = before - after.
"""

import json
import os
import tempfile

__all__ = ["STATS_SCHEMA", "render_stats", "write_stats", "atomic_write"]

STATS_SCHEMA = "cnfkit-stats/1"


def render_stats(report) -> str:
    doc = {
        "schema": STATS_SCHEMA,
        "clauses_before": report.clauses_before,
        "clauses_after": report.clauses_after,
        "techniques": {
            tid: {
                "clauses_removed": st.clauses_removed,
                "clauses_added": st.clauses_added,
                "literals_added": st.literals_added,
                "rounds": st.rounds,
                "seconds": st.seconds,
            }
            for tid, st in sorted(report.techniques.items())
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def atomic_write(path, text: str):
    """Write via a sibling temp file and rename, so readers never see a
    partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def write_stats(report, path):
    atomic_write(path, render_stats(report))
