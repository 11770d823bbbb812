import pytest


def pytest_addoption(parser):
    parser.addoption("--runbenchmarks", action="store_true",
                     help="run benchmarks")
    parser.addoption("--runsimulations", action="store_true",
                     help="run Monte Carlo simulation studies")
    parser.addoption("--all", action="store_true",
                     help="run benchmarks and simulations")


def pytest_collection_modifyitems(config, items):
    run_all = config.getoption("--all")
    options = {"benchmark": "--runbenchmarks",
               "simulation": "--runsimulations"}
    for (marker, option) in options.items():
        if run_all or config.getoption(option):
            continue
        skip = pytest.mark.skip(reason="needs {} to run".format(option))
        for item in items:
            if marker in item.keywords:
                item.add_marker(skip)
