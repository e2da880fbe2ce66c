from scripts.make_descriptor_corpus import DescriptorCorpus, main
from src.descriptor import load_descriptor
from src.surgery import blowdown


def test_classical_records_blow_down(tmp_path):
    corpus = DescriptorCorpus(tmp_path, seed=7)
    paths = corpus.save_corpus(corpus.generate_classical(5), "classical")
    assert [p.name for p in paths] == [f"classical_{i:03d}.json" for i in range(1, 5)]
    for n, path in enumerate(paths, start=2):
        descr = load_descriptor(path)
        assert descr.parity_ok
        report = blowdown(descr, 0)
        assert (report.n, report.m) == (n, 1)
        assert report.after.b2 == descr.b2 - report.k


def test_same_seed_same_corpus(tmp_path):
    first = DescriptorCorpus(tmp_path / "a", seed=3)
    second = DescriptorCorpus(tmp_path / "b", seed=3)
    assert first.generate_random(10) == second.generate_random(10)


def test_main_writes_files(tmp_path, capsys):
    assert main(["--out-dir", str(tmp_path), "--count", "4", "--n-max", "3"]) == 0
    assert len(list(tmp_path.glob("*.json"))) == 6
    assert "DESCRIPTOR CORPUS" in capsys.readouterr().out
