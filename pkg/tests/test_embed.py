from __future__ import annotations

import pytest

from layerlat import fixtures, ogroup as og
from layerlat.chain import Chain, ChainElement
from layerlat.densify import insert_above
from layerlat.embed import (EmbeddingSpec, check_embedding, element_map,
                            identity_embedding, parse_embedding_spec,
                            serialize_embedding_spec)
from layerlat.errors import TypeMismatch


def test_identity_into_insertion_passes_all_clauses(s3_chain):
    receipt = insert_above(s3_chain.bunch, "u")
    target = Chain(receipt.new_bunch)
    report = check_embedding(s3_chain, target, receipt.iota)
    assert report.ok, report.render()
    # finite source, so every clause is proved, not merely tested
    assert all(c.method == "proved" for c in report.clauses)


def test_exhaustive_pass_implies_monomorphism(s3_chain):
    receipt = insert_above(s3_chain.bunch, "u")
    target = Chain(receipt.new_bunch)
    spec = receipt.iota
    carrier = list(s3_chain.enumerate_elements())
    images = [element_map(spec, x) for x in carrier]
    assert len(set(images)) == len(carrier)
    for i, x in enumerate(carrier):
        for j, y in enumerate(carrier):
            assert s3_chain.compare(x, y) == target.compare(images[i], images[j])
            assert element_map(spec, s3_chain.mul(x, y)) == target.mul(images[i], images[j])
    ts, fs = s3_chain.constants()
    tt, ft = target.constants()
    assert element_map(spec, ts) == tt and element_map(spec, fs) == ft


def test_partition_swap_fails_e1(s3_chain):
    receipt = insert_above(s3_chain.bunch, "u")
    target = Chain(receipt.new_bunch)
    crossed = EmbeddingSpec({"t": "u", "u": "t"},
                            {"t": og.identity(og.TRIVIAL), "u": og.identity(og.TRIVIAL)})
    report = check_embedding(s3_chain, target, crossed)
    bad = {c.clause for c in report.clauses if not c.ok}
    assert {"partition", "skeleton-order", "least-element"} & bad
    assert not report.ok


def test_ze_doubling_fails_unit_cover(ze_chain):
    spec = EmbeddingSpec({"t": "t"}, {"t": og.scale_int(2)})
    report = check_embedding(ze_chain, ze_chain, spec)
    cover = next(c for c in report.clauses if c.clause == "unit-cover")
    assert not cover.ok  # 1 doubles to 2, but the unit cover is 1
    assert not report.ok


def test_ze_identity_embeds_into_itself(ze_chain):
    spec = identity_embedding(ze_chain.bunch)
    report = check_embedding(ze_chain, ze_chain, spec)
    assert report.ok
    assert any(c.method == "tested" for c in report.clauses)


def test_lz2_scaling_respects_subgroup_both_ways(lz2_chain):
    # tripling preserves the even multiples in both directions
    good = EmbeddingSpec({"t": "t", "u": "u"},
                         {"t": og.scale_int(3), "u": og.scale_int(3)})
    report = check_embedding(lz2_chain, lz2_chain, good)
    both = next(c for c in report.clauses if c.clause == "subgroup-both-ways")
    assert both.ok
    # doubling maps odd non-members into the subgroup: caught both-ways
    bad = EmbeddingSpec({"t": "t", "u": "u"},
                        {"t": og.scale_int(2), "u": og.scale_int(2)})
    report = check_embedding(lz2_chain, lz2_chain, bad)
    both = next(c for c in report.clauses if c.clause == "subgroup-both-ways")
    assert not both.ok


def test_ill_typed_layer_map_raises(s3_chain, zb_chain):
    spec = EmbeddingSpec({"t": "t", "u": "u"},
                         {"t": og.identity(og.TRIVIAL), "u": og.identity(og.TRIVIAL)})
    with pytest.raises(TypeMismatch):
        check_embedding(s3_chain, zb_chain, spec)


def test_spec_file_round_trip(s3_chain):
    receipt = insert_above(s3_chain.bunch, "u")
    text = serialize_embedding_spec(receipt.iota, s3_chain.bunch)
    back = parse_embedding_spec(text, s3_chain.bunch, receipt.new_bunch)
    assert back.skeleton_map == receipt.iota.skeleton_map
    report = check_embedding(s3_chain, Chain(receipt.new_bunch), back)
    assert report.ok
