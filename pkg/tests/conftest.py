import pytest


@pytest.fixture(autouse=True)
def crofton_home(tmp_path, monkeypatch):
    home = tmp_path / "crofton-home"
    monkeypatch.setenv("CROFTON_HOME", str(home))
    for name in ("CROFTON_THREADS", "CROFTON_THETA_COUNT", "CROFTON_SEED"):
        monkeypatch.delenv(name, raising=False)
    return home
