from gaplab.conf import conf


def test_read():
    conf.reset()
    assert len(conf)
    assert list(conf)


def test_conf_default():
    conf.reset()
    assert 'solver' in conf
    assert conf['solver']['grid-m'] == 2000
    assert conf['solver']['method'] == 'tridiag'
    assert conf['output']['digits'] == 10


def test_conf_merge():
    conf.reset()
    conf.merge({'foo': {'bar': 1, 'baz': 2}})
    assert conf['foo']['bar'] == 1
    assert conf['foo']['baz'] == 2

    conf.merge({"foo": {'baz': 3}})
    assert conf['foo']['bar'] == 1
    assert conf['foo']['baz'] == 3
    conf.reset()


def test_conf_merge_keeps_siblings():
    conf.merge({'solver': {'tol': 1e-8}})
    assert conf['solver']['tol'] == 1e-8
    assert conf['solver']['grid-m'] == 2000


def test_conf_environ(tmp_path, monkeypatch):
    path = tmp_path / 'conf.yml'
    path.write_text('solver:\n  grid-m: 123\n')
    monkeypatch.setenv('GAPLAB_CONF', str(path))
    conf.reset()
    assert conf['solver']['grid-m'] == 123
    assert conf['solver']['method'] == 'tridiag'



def test_defaults_for_new_sections():
    assert conf['profile']['order-m'] == 200
    assert conf['tables']['refine'] == 4
    assert conf['verify']['eigenfunctions']['residual-bound'] == 1e-6
