"""Acceptance gate: the headline behaviors, one test per criterion.

Each test prints one `ACCEPTANCE n (<name>): PASS` line when it holds;
pytest -v shows the same as one PASSED/FAILED row per criterion.
"""

import random
import time
from collections import Counter

from oracle import _sem_index, _sem_obj, _soa, _wrap_restr, oracle_parse
from clgram import (Atom, Avm, Engine, ListCons, NIL, Parser, Solution,
                    SortTable, Store, Struct, Var, canonical, copy_term,
                    corpus_source, load_corpus, make_list, resolve, unify)
from clgram.reader import parse_goals

CORPUS = load_corpus(corpus_source())


def items(t):
    out = []
    while isinstance(t, ListCons):
        out.append(t.head)
        t = t.tail
    return out


def test_acceptance_1_corpus_judgments(parser):
    t0 = time.monotonic()
    for sentence, expect in CORPUS:
        result = parser.parse(sentence)
        if expect == "*":
            assert not result.grammatical, sentence
        else:
            assert result.grammatical, sentence
            if expect.isdigit():
                assert len(result.readings) == int(expect), sentence
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, f"corpus took {elapsed:.2f}s"
    print(f"\nACCEPTANCE 1 (corpus judgments, {elapsed:.2f}s): PASS")


def test_acceptance_2_attachment_ambiguity(parser):
    result = parser.parse("dat arie bob vandaag wil kussen")
    kiss = _sem_obj(_soa("kiss_soa", {"kisser": _sem_index("arie"),
                                      "kissed": _sem_index("bob")}), ("nil",))

    def want(inner):
        return _sem_obj(_soa("want_soa", {"arg1": _sem_index("arie"),
                                          "soa_arg": inner}), ("nil",))

    narrow = want(_wrap_restr("vandaag_rel", kiss))
    wide = _wrap_restr("vandaag_rel", want(kiss))
    assert set(result.readings) == {narrow, wide}

    def shared_adverbials(deriv):
        sc = items(deriv.sign.feats["sc"])
        advs = [m for m in sc if m.sort.name.endswith("adverbial")]
        comp = next(m for m in sc
                    if m.sort.name == "verbal" and "sc" in m.feats)
        embedded = items(comp.feats["sc"])
        return [a for a in advs if any(a is x for x in embedded)]

    for d in result.derivations:
        if d.reading == narrow:
            # one token, one node, two list positions
            assert len(shared_adverbials(d)) == 1
        else:
            assert d.reading == wide
            assert shared_adverbials(d) == []
    assert sum(d.reading == narrow for d in result.derivations) == 1
    assert sum(d.reading == wide for d in result.derivations) == 2
    print("\nACCEPTANCE 2 (narrow/wide attachment): PASS")


def test_acceptance_3_delayed_evaluation(program):
    def run(text):
        eng = Engine(program)
        goals, names = parse_goals(text, program.sorts)
        return [s for s in eng.solve(goals, var_names=names)
                if isinstance(s, Solution)]

    ground = run("concat([a], [b], C).")
    assert len(ground) == 1 and not ground[0].residue

    open_ended = run("concat(A, [b], C).")
    assert len(open_ended) == 1
    assert len(open_ended[0].residue) == 1
    assert isinstance(open_ended[0].bindings["A"], Var)

    woken = run("concat(A, [b], C), eq(A, [a]).")
    assert len(woken) == 1 and not woken[0].residue
    assert canonical(woken[0].bindings["C"]) == \
        canonical(make_list([Atom("a"), Atom("b")]))
    print("\nACCEPTANCE 3 (delayed evaluation): PASS")


def test_acceptance_4_pinned_ambiguity_counts(parser):
    expectations = {
        "dat arie vandaag bob wil slaan": (2, 2),
        "dat arie bob vandaag wil kussen": (3, 2),
        "dat arie het artikel op tijd probeerde op te sturen": (3, 2),
        "dat arie bob de vrouwen met een verrekijker zag bekijken": (3, 2),
        "dat arie bob vandaag toevallig wil kussen": (7, 4),
    }
    for sentence, (derivs, readings) in expectations.items():
        result = parser.parse(sentence)
        assert (len(result.derivations), len(result.readings)) == \
            (derivs, readings), sentence
    print("\nACCEPTANCE 4 (pinned ambiguity counts): PASS")


def test_acceptance_5_reference_agreement(parser, lexicon):
    t0 = time.monotonic()
    for sentence, _ in CORPUS:
        tokens, _ = lexicon.tokenize(sentence)
        want_count, want_readings = oracle_parse(lexicon, tokens)
        result = parser.parse(sentence)
        assert len(result.derivations) == want_count, sentence
        got = Counter(d.reading for d in result.derivations)
        assert got == want_readings, sentence
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    print(f"\nACCEPTANCE 5 (reference agreement, {elapsed:.2f}s): PASS")


def test_acceptance_6_delays_respected_and_answers_ground(program, lexicon):
    def blocked(store, goal):
        args = goal.args if isinstance(goal, Struct) else ()
        name = goal.name
        spec = program.block_spec(name, len(args))
        if spec is None:
            return False
        for pattern in spec.patterns:
            watched = [a for a, m in zip(args, pattern) if m]
            if watched and all(isinstance(store.deref(a), Var)
                               for a in watched):
                return True
        return False

    counts = Counter()
    violations = []

    def trace(event, store):
        counts[event[0]] += 1
        if event[0] == "call" and blocked(store, event[1]):
            violations.append(event[1])

    traced = Parser(program, lexicon, trace=trace)
    sentences = ["dat arie bob vandaag toevallig wil kussen",
                 "dat arie bob zou moeten kunnen willen kussen",
                 "dat arie bob de vrouwen met een verrekijker zag bekijken"]
    for sentence in sentences:
        result = traced.parse(sentence)
        for d in result.derivations:
            assert not has_var(d.reading), d.reading_text

    assert violations == []
    assert counts["suspend"] > 0
    assert counts["resume"] > 0
    print(f"\nACCEPTANCE 6 (delays respected: {counts['suspend']} suspensions, "
          f"0 blocked calls, all readings ground): PASS")


def has_var(tree) -> bool:
    if not isinstance(tree, tuple):
        return False
    if tree[0] == "var":
        return True
    return any(has_var(x) for x in tree)


def test_acceptance_7_scope_combinatorics(parser, lexicon):
    rng = random.Random(20260818)
    advs = ["vandaag", "op tijd", "met een verrekijker", "toevallig",
            "blijkbaar"]
    auxes = ["wil", "zou", "probeerde"]
    for trial in range(100):
        k = rng.randint(0, 4)
        chosen = rng.sample(advs, k)
        middle = " ".join(chosen) + (" " if chosen else "")
        sentence = f"dat arie {middle}bob {rng.choice(auxes)} kussen"
        tokens, _ = lexicon.tokenize(sentence)
        want_count, want_readings = oracle_parse(lexicon, tokens)
        result = parser.parse(sentence)
        got = Counter(d.reading for d in result.derivations)
        assert len(result.derivations) == want_count == 2 ** k, sentence
        assert got == want_readings, sentence
        assert len(result.readings) == 2 ** k, sentence
    print("\nACCEPTANCE 7 (scope readings double per adverbial, 100 trials): "
          "PASS")


def test_acceptance_8_randomized_store_invariants():
    rng = random.Random(97)
    sorts_pool = ["sign", "verbal", "finite", "noun"]

    def table():
        t = SortTable()
        t.declare("sign", "top")
        t.declare("verbal", "sign")
        t.declare("finite", "verbal")
        t.declare("noun", "sign")
        return t

    def gen(store, env, depth=0):
        roll = rng.random()
        if depth >= 3 or roll < 0.35:
            return Atom(rng.choice("abcd"))
        if roll < 0.55:
            name = rng.choice("XYZ")
            if name not in env:
                env[name] = store.new_var(name)
            return env[name]
        if roll < 0.7:
            return make_list([gen(store, env, depth + 1)
                              for _ in range(rng.randint(0, 3))])
        if roll < 0.85:
            feats = {f: gen(store, env, depth + 1)
                     for f in rng.sample(["f", "g", "h"], rng.randint(0, 3))}
            return Avm(store.sorts.get(rng.choice(sorts_pool)), feats)
        return Struct(rng.choice("pq"),
                      tuple(gen(store, env, depth + 1)
                            for _ in range(rng.randint(1, 3))))

    checks = 0
    for _ in range(400):
        seed_state = rng.getstate()
        s1 = Store(table())
        a, b = gen(s1, {}), gen(s1, {})
        before_a = canonical(resolve(s1, a))
        before_b = canonical(resolve(s1, b))
        mark = s1.mark()
        ok = unify(s1, a, b)
        if ok:
            assert canonical(resolve(s1, a)) == canonical(resolve(s1, b))
        else:
            # failure left nothing behind
            assert s1.mark() == mark
            assert canonical(resolve(s1, a)) == before_a
            assert canonical(resolve(s1, b)) == before_b
        checks += 1

        # same pair, opposite orientation, fresh store
        rng.setstate(seed_state)
        s2 = Store(table())
        c, d = gen(s2, {}), gen(s2, {})
        assert unify(s2, d, c) == ok
        checks += 1

        # a copy is interchangeable with its original
        rng.setstate(seed_state)
        s3 = Store(table())
        e, _ = gen(s3, {}), gen(s3, {})
        cp = copy_term(s3, e)
        assert canonical(resolve(s3, cp)) == canonical(resolve(s3, e))
        assert unify(s3, e, cp)
        checks += 1

    assert checks >= 1000
    print(f"\nACCEPTANCE 8 (randomized store invariants, {checks} checks): "
          "PASS")
