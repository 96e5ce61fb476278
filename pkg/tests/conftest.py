"""Common test fixtures: the Prefect harness and the field specifications under field_specs/."""

import asyncio
from collections.abc import Callable
from functools import cache
from pathlib import Path

import pytest
from ai_pipeline_core import disable_run_logger, prefect_test_harness

from toral_kms.field_spec import FieldContext, load_field_context

FIELD_SPECS = Path(__file__).resolve().parent.parent / "field_specs"


@cache
def cached_context(name: str) -> FieldContext:
    return load_field_context(FIELD_SPECS / f"{name}.toml")


@pytest.fixture(scope="session")
def field_specs_dir() -> Path:
    """Directory holding the regression field specifications."""
    return FIELD_SPECS


@pytest.fixture(scope="session")
def field_context() -> Callable[[str], FieldContext]:
    """Loader of verified field contexts by spec file stem, shared across the session."""
    return cached_context


@pytest.fixture(autouse=True, scope="session")
def prefect_test_fixture():
    """Temporary Prefect database for the pipeline task and flow tests."""
    with prefect_test_harness():
        yield


@pytest.fixture(autouse=True)
def disable_prefect_logging():
    """Pipeline loggers called outside a flow run must not look up the run context."""
    with disable_run_logger():
        yield


@pytest.fixture(autouse=True)
def event_loop():
    """Fresh event loop per test; pending tasks are cancelled before it closes."""
    loop = asyncio.new_event_loop()
    yield loop

    try:
        pending = asyncio.all_tasks(loop)
        if pending:
            loop.run_until_complete(asyncio.sleep(0.2))

            for task in asyncio.all_tasks(loop):
                task.cancel()

            loop.run_until_complete(
                asyncio.gather(*asyncio.all_tasks(loop), return_exceptions=True)
            )
    finally:
        loop.close()
