import pytest

from fracle import SolverConfig, builtin, qlm_solve


@pytest.fixture(scope="session")
def solve_cache():
    """Memoized converged solutions keyed by (case, alpha, beta, J)."""
    cache = {}

    def get(case, alpha, beta, J, diagnostics=None):
        key = (case, alpha, beta, J, diagnostics)
        if key not in cache:
            cfg = SolverConfig(J=J, compute_diagnostics=diagnostics)
            cache[key] = qlm_solve(builtin(case, alpha, beta), cfg)
        return cache[key]

    return get


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
