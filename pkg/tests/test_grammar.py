"""The lexical pipeline: stems, adjunct splicing, inflection, extraction."""

import pytest

from clgram import (Atom, Avm, Engine, ListCons, NIL, Solution, build_program,
                    canonical, canonical_text, make_list)
from clgram.reader import parse_goals
from clgram.terms import Struct


def run(program, text, engine=None):
    eng = engine or Engine(program)
    goals, names = parse_goals(text, program.sorts)
    return [s for s in eng.solve(goals, var_names=names)
            if isinstance(s, Solution)]


def items(t):
    out = []
    while isinstance(t, ListCons):
        out.append(t.head)
        t = t.tail
    return out


def feat(avm, path):
    for name in path.split("."):
        avm = avm.feats[name]
    return avm


class TestStems:
    def test_transitive_shape(self, program):
        (sol,) = run(program, "stem(kussen, S).")
        s = sol.bindings["S"]
        assert s.sort.name == "verbal"
        sc = items(feat(s, "sc"))
        assert len(sc) == 1
        assert sc[0].sort.name == "noun"
        assert feat(sc[0], "dir") == Atom("left")
        qfsoa = feat(s, "sem.nuc.qfsoa")
        assert qfsoa.sort.name == "kiss_soa"
        assert feat(qfsoa, "kisser") is feat(s, "subj.sem")
        assert feat(qfsoa, "kissed") is feat(sc[0], "sem")
        assert feat(s, "sem.nuc.restr") is NIL

    def test_intransitive_empty_sc(self, program):
        (sol,) = run(program, "stem(slapen, S).")
        s = sol.bindings["S"]
        assert items(feat(s, "sc")) == []
        assert feat(s, "sem.nuc.qfsoa").sort.name == "sleep_soa"
        assert feat(s, "sem.nuc.qfsoa.sleeper") is feat(s, "subj.sem")

    def test_ditransitive_object_order(self, program):
        (sol,) = run(program, "stem(geven, S).")
        s = sol.bindings["S"]
        sc = items(feat(s, "sc"))
        assert len(sc) == 2
        qfsoa = feat(s, "sem.nuc.qfsoa")
        assert feat(qfsoa, "given") is feat(sc[0], "sem")
        assert feat(qfsoa, "recipient") is feat(sc[1], "sem")

    def test_raising_verb_inherits_tail(self, program):
        (sol,) = run(program, "stem(wil, S).")
        s = sol.bindings["S"]
        sc = feat(s, "sc")
        comp = sc.head
        assert comp.sort.name == "verbal"
        assert feat(comp, "dir") == Atom("right")
        # argument inheritance: the rest of the list IS the complement's list
        assert sc.tail is feat(comp, "sc")
        qfsoa = feat(s, "sem.nuc.qfsoa")
        assert qfsoa.sort.name == "want_soa"
        assert feat(qfsoa, "arg1") is feat(s, "subj.sem")
        assert feat(qfsoa, "soa_arg") is feat(comp, "sem")
        # control: one index var shared between subject and embedded subject
        assert feat(qfsoa, "arg1.index") is feat(comp, "subj.sem.index")

    def test_perception_verb_suspends_on_open_complement(self, program):
        (sol,) = run(program, "stem(zag, S).")
        assert len(sol.residue) == 1
        assert canonical_text(canonical(sol.residue[0])).startswith("concat(")

    def test_perception_verb_realizes_embedded_subject(self, program):
        sols = run(program,
                   "stem(zag, S), eq(S, @verbal{sc: [C | R]}), "
                   "eq(C, @verbal{sc: []}).")
        assert len(sols) == 1 and not sols[0].residue
        sc = items(feat(sols[0].bindings["S"], "sc"))
        assert len(sc) == 2
        assert sc[1].sort.name == "noun"
        assert feat(sc[1], "dir") == Atom("left")
        # the added noun is the complement's subject
        assert sc[1] is feat(sc[0], "subj")


class TestInflection:
    def test_finite_appends_subject(self, program):
        (sol,) = run(program,
                     "stem(kussen, B), inflection(kussen, finite, B, D).")
        d = sol.bindings["D"]
        assert d.sort.name == "finite"
        assert feat(d, "lex") == Atom("kust")
        sc = items(feat(d, "sc"))
        assert len(sc) == 2
        assert sc[1] is feat(d, "subj")
        assert feat(d, "sem") is feat(sol.bindings["B"], "sem")

    def test_irregular_finite_form(self, program):
        (sol,) = run(program, "stem(wil, B), inflection(wil, finite, B, D).")
        assert feat(sol.bindings["D"], "lex") == Atom("wil")
        # the subcat tail is still open, so the append stays suspended
        assert len(sol.residue) == 1

    def test_nonfinite_keeps_stem_list(self, program):
        (sol,) = run(program,
                     "stem(kussen, B), inflection(kussen, nonfinite, B, D).")
        d = sol.bindings["D"]
        assert feat(d, "lex") == Atom("kussen")
        assert feat(d, "sc") is feat(sol.bindings["B"], "sc")
        assert len(items(feat(d, "sc"))) == 1

    def test_finite_only_words_have_no_nonfinite_entry(self, program):
        for w in ("wil", "zou", "zag", "probeerde"):
            assert run(program, f"stem({w}, B), "
                                f"inflection({w}, nonfinite, B, D).") == []

    def test_nonfinite_only_words_have_no_finite_entry(self, program):
        for w in ("willen", "kunnen", "moeten", "op_te_sturen"):
            assert run(program, f"stem({w}, B), "
                                f"inflection({w}, finite, B, D).") == []


class TestExtraction:
    def test_identity_variant_constrains_slash(self, program):
        sols = run(program, "push_slash(A, B), eq(A, @verbal{lex: kus}).")
        assert len(sols) == 1
        a, b = sols[0].bindings["A"], sols[0].bindings["B"]
        assert a is b
        assert feat(a, "slash") is NIL
        assert a.sort.name == "verbal"

    def empty_sc_entries(self, word, enable_slash):
        program, _ = build_program(enable_slash=enable_slash)
        eng = Engine(program)
        e = eng.store.new_var("E")
        goals = [Struct("lexical_entry", (Atom(word), Atom("nonfinite"), e)),
                 Struct("eq", (e, Avm(program.sorts.get("verbal"),
                                      {"sc": NIL})))]
        return [s for s in eng.solve(goals, var_names={"E": e})
                if isinstance(s, Solution) and not s.residue]

    def test_off_by_default(self):
        assert self.empty_sc_entries("kussen", False) == []

    def test_extracts_an_object(self):
        (sol,) = self.empty_sc_entries("kussen", True)
        e = sol.bindings["E"]
        slash = items(feat(e, "slash"))
        assert len(slash) == 1
        assert slash[0].sort.name == "noun"
        # the extracted member still supplies the argument's semantics
        assert feat(slash[0], "sem") is feat(e, "sem.nuc.qfsoa.kissed")

    def test_extracts_an_inserted_adverbial(self):
        sols = self.empty_sc_entries("slapen", True)
        assert len(sols) == 2
        by_slash = {len(items(feat(s.bindings["E"], "slash"))): s.bindings["E"]
                    for s in sols}
        assert set(by_slash) == {0, 1}
        extracted = items(feat(by_slash[1], "slash"))[0]
        assert extracted.sort.name == "adverbial"
        # the entry's meaning is the adverbial's output value
        assert feat(by_slash[1], "sem") is feat(extracted, "mod.val")


class TestAdverbialEntries:
    def test_restrictive_shares_nucleus_core(self, program):
        (sol,) = run(program, "adverbial_entry(vandaag, A).")
        a = sol.bindings["A"]
        assert a.sort.name == "restr_adverbial"
        arg, val = feat(a, "mod.arg"), feat(a, "mod.val")
        assert feat(arg, "nuc.qfsoa") is feat(val, "nuc.qfsoa")
        restr = feat(val, "nuc.restr")
        assert restr.head == Atom("vandaag_rel")
        assert restr.tail is feat(arg, "nuc.restr")

    def test_operator_embeds_argument(self, program):
        (sol,) = run(program, "adverbial_entry(toevallig, A).")
        a = sol.bindings["A"]
        assert a.sort.name == "op_adverbial"
        qfsoa = feat(a, "mod.val.nuc.qfsoa")
        assert qfsoa.sort.name == "accidental_soa"
        assert feat(qfsoa, "soa_arg") is feat(a, "mod.arg")
        assert feat(a, "mod.val.nuc.restr") is NIL


class TestLexicalEntry:
    def test_open_list_leaves_constraint_pending(self, program):
        eng = Engine(program)
        e = eng.store.new_var("E")
        goals = [Struct("lexical_entry",
                        (Atom("kussen"), Atom("nonfinite"), e))]
        sols = [s for s in eng.solve(goals, var_names={"E": e})
                if isinstance(s, Solution)]
        assert len(sols) == 1
        assert len(sols[0].residue) == 1
        assert canonical_text(canonical(sols[0].residue[0])).startswith("add_adj(")

    def count_shapes(self, program, word, k):
        eng = Engine(program)
        st = eng.store
        slots = [st.new_var(f"V{i}") for i in range(k)]
        sign = Avm(program.sorts.get("sign"),
                   {"sc": make_list(slots), "slash": NIL})
        goal = Struct("lexical_entry", (Atom(word), Atom("finite"), sign))
        n = 0
        m0 = st.mark()
        for _ in eng.prove_live([goal]):
            if not st.pending_residue():
                n += 1
        st.undo_to(m0)
        return n

    def test_fixed_arity_counts(self, program):
        # transitive verb with k subcat slots: the object plus the subject
        # occupy two, the rest must be spliced adverbials, one shape per
        # interleaving
        assert [self.count_shapes(program, "kussen", k)
                for k in (1, 2, 3, 4)] == [0, 1, 2, 3]

    def test_raising_verb_counts(self, program):
        # [complement | inherited] embeds into k-1 slots every way the
        # open tail allows
        assert [self.count_shapes(program, "wil", k)
                for k in (1, 2, 3)] == [0, 1, 3]
