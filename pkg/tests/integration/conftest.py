import json
from typing import Any, Dict, List, Optional

import pytest
from click.testing import CliRunner, Result

from torus_reduction._cli import cli


@pytest.fixture(scope="session")
def engine_cli():
    yield cli


def read_document(output: str) -> Dict[str, Any]:
    """
    The first JSON object in ``output``; log lines share the stream in tests.
    """

    start = output.index("{")
    document, _ = json.JSONDecoder().raw_decode(output[start:])
    return document


class TorusReductionCliRunner:
    runner = CliRunner()

    def __init__(self, cli, base_cmd: List[str]):
        self._cli = cli
        self.base_cmd = base_cmd

    def invoke(self, *cmd, exit_code: Optional[int] = 0) -> Result:
        engine_cmd = self._get_cmd(*cmd)
        result = self.runner.invoke(self._cli, engine_cmd, catch_exceptions=False)
        if exit_code is not None:
            cmd_str = " ".join(engine_cmd)
            msg = f"CMD '{cmd_str}' exited with {result.exit_code}, output '{result.output}'"
            assert result.exit_code == exit_code, msg

        return result

    def document(self, *cmd, exit_code: Optional[int] = 0) -> Dict[str, Any]:
        return read_document(self.invoke(*cmd, exit_code=exit_code).output)

    def _get_cmd(self, *args) -> List[str]:
        return [*self.base_cmd, *[str(a) for a in args]]


@pytest.fixture(scope="session")
def pair_runner(engine_cli):
    return TorusReductionCliRunner(engine_cli, ["pair"])


@pytest.fixture(scope="session")
def volume_runner(engine_cli):
    return TorusReductionCliRunner(engine_cli, ["volume"])


@pytest.fixture(scope="session")
def pushforward_runner(engine_cli):
    return TorusReductionCliRunner(engine_cli, ["pushforward"])


@pytest.fixture(scope="session")
def check_runner(engine_cli):
    return TorusReductionCliRunner(engine_cli, ["check"])


@pytest.fixture(scope="session")
def oracle_runner(engine_cli):
    return TorusReductionCliRunner(engine_cli, ["oracle"])


@pytest.fixture(scope="session")
def run_runner(engine_cli):
    return TorusReductionCliRunner(engine_cli, ["run"])
