import pytest

from qschur.config import Config, ConfigError, load_config


def test_defaults():
    cfg = load_config()
    assert cfg.n == 2 and cfg.primes == (2, 3)


def test_toml_and_json(tmp_path):
    t = tmp_path / "run.toml"
    t.write_text('n = 3\nD = [0, 4]\nprimes = [2, 5]\norder = 12\n')
    cfg = load_config(str(t))
    assert (cfg.n, cfg.D, cfg.primes, cfg.order) == (3, (0, 4), (2, 5), 12)
    j = tmp_path / "run.json"
    j.write_text('{"budget": 500, "seed": 7}')
    cfg = load_config(str(j), seed=9)
    assert cfg.budget == 500 and cfg.seed == 9


def test_env_cache_dir(monkeypatch):
    monkeypatch.setenv("QSCHUR_CACHE", "/tmp/somewhere")
    assert load_config().cache_dir == "/tmp/somewhere"
    assert load_config(cache_dir="/tmp/else").cache_dir == "/tmp/else"


@pytest.mark.parametrize("bad", [{"n": 1}, {"D": (3, 1)}, {"budget": 0}, {"primes": (6,)}, {"window": 0}])
def test_validation(bad):
    with pytest.raises(ConfigError):
        Config(**bad)


def test_unparseable_file(tmp_path):
    p = tmp_path / "x.toml"
    p.write_text("n = = 2")
    with pytest.raises(ConfigError):
        load_config(str(p))
