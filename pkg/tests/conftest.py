import pytest

from semsim import build_taxonomy, data_path


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, description, max_seconds): acceptance criterion")
    config._acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, description, limit = marker.args
    notes = [v for k, v in report.user_properties if k == "notice"]
    item.config._acceptance.append((number, description, report.outcome, report.duration, limit, notes))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = getattr(config, "_acceptance", [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, outcome, duration, limit, notes in sorted(rows, key=lambda r: r[0]):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(
            f"[{status}] criterion {number}: {description} ({duration:.2f}s, limit {limit}s)")
        for note in notes:
            terminalreporter.write_line(f"         note: {note}")


@pytest.fixture
def chain():
    """ROOT -> x -> y"""
    return build_taxonomy([("ROOT", ["root"]), ("x", ["x"]), ("y", ["y"])], [("x", "ROOT"), ("y", "x")])


@pytest.fixture
def siblings():
    """virtual ROOT over a and b"""
    return build_taxonomy([("a", ["a"]), ("b", ["b"])], [])


@pytest.fixture
def diamond():
    return build_taxonomy(
        [("ROOT", ["root"]), ("p", ["p"]), ("q", ["q"]), ("z", ["z"])],
        [("p", "ROOT"), ("q", "ROOT"), ("z", "p"), ("z", "q")],
    )


@pytest.fixture
def fixture_dir():
    return data_path


@pytest.fixture
def toy_paths():
    return {k: data_path("toy", f) for k, f in
            [("taxonomy", "taxonomy.tax"), ("set_a", "set_a.txt"), ("set_b", "set_b.txt"),
             ("reference", "reference.csv")]}


@pytest.fixture
def mini_paths():
    return {k: data_path("mini", f) for k, f in
            [("taxonomy", "taxonomy.tax"), ("set_a", "set_a.txt"), ("set_b", "set_b.txt"),
             ("reference", "reference.csv"), ("general", "general.txt"),
             ("encyclopedia", "encyclopedia.txt")]}
