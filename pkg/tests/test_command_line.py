import sys
from pathlib import Path

import pytest

try:
    import sh
except (ImportError, ModuleNotFoundError):
    sh = None  # sh doesn't support Windows

if sys.platform.startswith("win"):
    pytest.skip("sh doesn't support windows", allow_module_level=True)

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def hyperdyn():
    return sh.Command(sys.executable).bake("-m", "hyperdyn", _cwd=str(ROOT), _return_cmd=True)


def test_verify_is_byte_identical(hyperdyn, tmp_path):
    outputs = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        hyperdyn("verify", "--catalog", "rot4,id2,shift2", "--theorems", "T1,T12", "--out", str(out))
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_usage_error_exit_code(hyperdyn):
    with pytest.raises(sh.ErrorReturnCode_2):
        hyperdyn("check", "--system", "rot5", "--property", "nosuch")


def test_report_on_stdout(hyperdyn):
    result = hyperdyn("verify", "--catalog", "id2", "--theorems", "T1", "--format", "csv")
    assert result.stdout.decode().startswith("theorem,system,n,")
