import contextlib
import io

import numpy as np
import pytest

import leastdiff as ld
from leastdiff import cli


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture
def toy_study():
    """A comfortably significant two-group study on the raw scale."""
    return ld.StudyRecord(
        ld.GroupSummary(100.0, 12.0, 8),
        ld.GroupSummary(70.0, 9.0, 6),
        0.05,
        units="mg/dL",
    )


def run_cli(argv):
    """Invoke the CLI in-process; returns (exit_code, stdout_text)."""
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()
