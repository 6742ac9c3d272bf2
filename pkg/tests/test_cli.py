import json

import pytest
from click.testing import CliRunner

from similemine.cli import main
from similemine.features import write_labeled
from similemine.synthetic import make_synthetic


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(main, list(args), catch_exceptions=False)
    return result


def e2e_pages():
    def page(body):
        return (
            "text/html; charset=utf-8",
            f'<html><body><div id="menu">Pocetna</div>{body}</body></html>',
        )

    return {
        "/": page('<div id="content">Radi kao konj. Vredan kao mrav.</div>'
                  '<a href="/a">a</a> <a href="/b">b</a>'),
        "/a": page('<div id="content">Lep kao cvet.</div><a href="/c">c</a>'),
        "/b": page('<div id="content">Radi kao pravnik. Ljut kao ris.</div>'
                   '<a href="/d">d</a>'),
        "/c": page('<div id="content">Hladan kao kamen.</div>'),
        "/d": page('<div id="content">Bela kao sneg.</div>'),
    }


def write_site_config(path, seed_url):
    path.write_text(
        f"site_id = fixture\nseed_urls = {seed_url}\ndomain = localhost\n"
        "content_selector = div[id=content]\nmax_pages = 20\n"
        "politeness_delay_ms = 0\nmax_depth = 5\n",
        encoding="utf-8",
    )


class TestEndToEnd:
    def test_full_pipeline_matches_hand_tally(self, runner, tmp_path, fixture_site):
        site = fixture_site(e2e_pages())
        cfg = tmp_path / "site.cfg"
        write_site_config(cfg, site.url("/"))
        docs = tmp_path / "docs.jsonl"
        cands = tmp_path / "cands.jsonl"
        classified = tmp_path / "classified.jsonl"
        model = tmp_path / "nb.model.json"
        labeled = tmp_path / "labeled.tsv"
        store = tmp_path / "similes.db"

        assert invoke(runner, "crawl", "--site", str(cfg), "--out", str(docs)).exit_code == 0
        assert sum(1 for _ in open(docs)) == 5

        assert invoke(runner, "extract", "--in", str(docs), "--out", str(cands)).exit_code == 0
        phrases = sorted(json.loads(l)["phrase"].lower() for l in open(cands, encoding="utf-8"))
        assert phrases == sorted([
            "radi kao konj", "vredan kao mrav", "lep kao cvet",
            "radi kao pravnik", "ljut kao ris", "hladan kao kamen", "bela kao sneg",
        ])

        write_labeled(labeled, make_synthetic())
        assert invoke(runner, "train", "--data", str(labeled), "--model", "nb",
                      "--out", str(model)).exit_code == 0

        assert invoke(runner, "classify", "--model", str(model), "--in", str(cands),
                      "--out", str(classified)).exit_code == 0
        rows = [json.loads(l) for l in open(classified, encoding="utf-8")]
        by_phrase = {r["phrase"].lower(): r["label"] for r in rows}
        # hand tally: the profession phrase is the one lexical false positive
        assert by_phrase["radi kao pravnik"] == 0
        positives = [p for p, lab in by_phrase.items() if lab == 1]
        assert sorted(positives) == sorted([
            "radi kao konj", "vredan kao mrav", "lep kao cvet",
            "ljut kao ris", "hladan kao kamen", "bela kao sneg",
        ])

        assert invoke(runner, "load-candidates", "--in", str(classified),
                      "--store", str(store)).exit_code == 0
        result = invoke(runner, "stats", "--store", str(store))
        assert result.exit_code == 0
        stats = json.loads(result.stdout)
        assert stats["by_source"]["www"]["pending"] == 6
        assert stats["total"] == 6
        assert stats["total_approved"] == 0


class TestEval:
    def test_fixed_seed_report_is_byte_identical(self, runner, tmp_path):
        labeled = tmp_path / "labeled.tsv"
        write_labeled(labeled, make_synthetic(n_pos=40, n_neg=40))
        model = tmp_path / "nb.json"
        invoke(runner, "train", "--data", str(labeled), "--model", "nb",
               "--out", str(model))
        first = invoke(runner, "eval", "--model", str(model), "--data", str(labeled),
                       "--folds", "10", "--seed", "7")
        second = invoke(runner, "eval", "--model", str(model), "--data", str(labeled),
                        "--folds", "10", "--seed", "7")
        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout

    def test_plain_eval_prints_metrics(self, runner, tmp_path):
        labeled = tmp_path / "labeled.tsv"
        write_labeled(labeled, make_synthetic(n_pos=30, n_neg=30))
        model = tmp_path / "nb.json"
        invoke(runner, "train", "--data", str(labeled), "--model", "nb",
               "--out", str(model))
        result = invoke(runner, "eval", "--model", str(model), "--data", str(labeled))
        body = json.loads(result.stdout)
        assert {"precision", "recall", "f_measure", "tp", "fp", "fn", "tn"} <= set(body)


class TestTrain:
    def test_svm_train_and_classify(self, runner, tmp_path):
        labeled = tmp_path / "labeled.tsv"
        write_labeled(labeled, make_synthetic(n_pos=40, n_neg=40))
        model = tmp_path / "svm.json"
        result = invoke(runner, "train", "--data", str(labeled), "--model", "svm",
                        "--out", str(model), "--c", "1.0", "--degree", "2")
        assert result.exit_code == 0
        assert "P=" in result.output

    def test_paper_scale_train_completes_and_prints_prf(self, runner, tmp_path):
        labeled = tmp_path / "labeled.tsv"
        write_labeled(labeled, make_synthetic())  # 300 + 300
        model = tmp_path / "nb.json"
        result = invoke(runner, "train", "--data", str(labeled), "--model", "nb",
                        "--out", str(model))
        assert result.exit_code == 0
        assert "P=" in result.output and "R=" in result.output and "F=" in result.output


class TestCorpusCommands:
    def test_import_corpus_and_export(self, runner, tmp_path):
        karadzic = tmp_path / "karadzic.txt"
        karadzic.write_text(
            "# zbirka iz 1849\nbeo kao sneg\nbrz kao zec\nbeo kao sneg\n",
            encoding="utf-8",
        )
        store = tmp_path / "s.db"
        result = invoke(runner, "import-corpus", "--file", str(karadzic),
                        "--source", "karadzic", "--trusted", "--store", str(store))
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["added"] == 2
        assert report["duplicates"] == 1

        out = tmp_path / "export.jsonl"
        assert invoke(runner, "export", "--out", str(out),
                      "--store", str(store)).exit_code == 0
        rows = [json.loads(l) for l in open(out, encoding="utf-8")]
        assert len(rows) == 2
        assert all(r["status"] == "approved" for r in rows)

    def test_user_add(self, runner, tmp_path):
        store = tmp_path / "s.db"
        result = invoke(runner, "user-add", "--name", "cur", "--role", "curator",
                        "--password", "tajna", "--store", str(store))
        assert result.exit_code == 0
        from similemine.corpus import SimileStore
        from similemine.stemming import default_rules

        s = SimileStore(store, default_rules())
        try:
            assert s.verify_user("cur", "tajna") == "curator"
            assert s.verify_user("cur", "pogresna") is None
        finally:
            s.close()


class TestErrorHandling:
    def test_unknown_flag_exits_2(self, runner):
        result = runner.invoke(main, ["crawl", "--nope"])
        assert result.exit_code == 2

    def test_missing_input_file_exits_2(self, runner):
        result = runner.invoke(main, ["extract", "--in", "/no/such.jsonl",
                                      "--out", "/tmp/x.jsonl"])
        assert result.exit_code == 2

    def test_stage_failure_exits_1_with_json_error(self, runner, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("not a labeled file\n", encoding="utf-8")
        model = tmp_path / "m.json"
        result = runner.invoke(main, ["train", "--data", str(bad), "--model", "nb",
                                      "--out", str(model)])
        assert result.exit_code == 1
        event = json.loads(result.stderr.strip().splitlines()[-1])
        assert event["stage"] == "train"
        assert "error" in event

    def test_classify_overwrites_atomically(self, runner, tmp_path):
        # re-running a command replaces output without appending
        labeled = tmp_path / "labeled.tsv"
        write_labeled(labeled, make_synthetic(n_pos=20, n_neg=20))
        model = tmp_path / "m.json"
        invoke(runner, "train", "--data", str(labeled), "--model", "nb",
               "--out", str(model))
        cands = tmp_path / "c.jsonl"
        cands.write_text(json.dumps({
            "left": "radi", "connector": "kao", "connector_surface": "kao",
            "right": "konj", "phrase": "radi kao konj", "kind": "verbal",
            "doc_url": "http://x/1", "sentence_index": 0, "span": [0, 2], "count": 1,
        }) + "\n", encoding="utf-8")
        out = tmp_path / "o.jsonl"
        for _ in range(2):
            assert invoke(runner, "classify", "--model", str(model), "--in", str(cands),
                          "--out", str(out)).exit_code == 0
        assert sum(1 for _ in open(out)) == 1
