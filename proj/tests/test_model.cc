#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gradcheck.h"
#include "semicrf/checkpoint.h"
#include "semicrf/model.h"

using namespace semicrf;
using autodiff::node;
using autodiff::parameter;
using autodiff::tape;

namespace {

model_config tiny_cfg(composition_kind kind, bool segemb = true) {
    model_config cfg;
    cfg.task = task_kind::span_labeled;
    cfg.comp = kind;
    cfg.max_seg_len = 2;
    cfg.dim_unit_pre = 4;
    cfg.dim_unit_tuned = 3;
    cfg.dim_input = 5;
    cfg.dim_hidden = 4;
    cfg.dim_scomp = 3;
    cfg.dim_semb = 3;
    cfg.dim_label = 2;
    cfg.dim_segment = 5;
    cfg.use_segment_embeddings = segemb;
    cfg.labels = {"NONE", "X"};
    cfg.seed = 7;
    return cfg;
}

const std::vector<std::string> kVocab = {"a", "b", "c", "d"};
const std::vector<std::string> kSegKeys = {"a", "b", "c", "d", "a_b", "c_d", "b_c"};

std::vector<parameter*> trainable_params(model& m) {
    std::vector<parameter*> out;
    for (auto& p : m.store.all()) {
        if (p.trainable) {
            out.push_back(&p);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("lattice scores are finite and deterministic per seed") {
    model m1(tiny_cfg(composition_kind::srnn), kVocab, kSegKeys);
    model m2(tiny_cfg(composition_kind::srnn), kVocab, kSegKeys);

    std::vector<std::string> tokens = {"a", "b", "c", "e"};
    tape t1;
    segment_lattice l1 = m1.build_lattice(t1, tokens);
    tape t2;
    segment_lattice l2 = m2.build_lattice(t2, tokens);
    for (int b = 0; b < 4; ++b) {
        for (int e = b + 1; e <= std::min(4, b + 2); ++e) {
            for (int y = 0; y < 2; ++y) {
                CHECK(std::isfinite(l1.value(b, e, y)));
                CHECK(l1.value(b, e, y) == l2.value(b, e, y));
            }
        }
    }
    CHECK(m1.predict(tokens) == m2.predict(tokens));
}

TEST_CASE("zero scoring weight zeroes every segment score") {
    model m(tiny_cfg(composition_kind::sconcate), kVocab, kSegKeys);
    std::fill(m.score_w->value.data.begin(), m.score_w->value.data.end(), 0.0);
    tape t;
    segment_lattice lat = m.build_lattice(t, {"a", "b"});
    for (int b = 0; b < 2; ++b) {
        for (int e = b + 1; e <= 2; ++e) {
            for (int y = 0; y < 2; ++y) {
                CHECK(lat.value(b, e, y) == 0.0);
            }
        }
    }
}

TEST_CASE("score gradient w.r.t. the scoring weight is the segment representation") {
    model m(tiny_cfg(composition_kind::scnn), kVocab, kSegKeys);
    tape t;
    segment_lattice lat = m.build_lattice(t, {"a", "b", "c"});
    node* score = lat.at(0, 2, 1);
    t.backward(score);
    const autodiff::tensor* g = t.grad_of(*m.score_w);
    REQUIRE(g != nullptr);
    // score = w . S, so dscore/dw = S and w . (dscore/dw) = score
    double recon = 0.0;
    for (int i = 0; i < g->size(); ++i) {
        recon += m.score_w->value[i] * (*g)[i];
        CHECK((*g)[i] >= 0.0);  // S is a ReLU output
    }
    CHECK(recon == doctest::Approx(score->scalar()).epsilon(1e-12));

    // basis scoring weight reads out one coordinate of S
    std::fill(m.score_w->value.data.begin(), m.score_w->value.data.end(), 0.0);
    m.score_w->value[2] = 1.0;
    tape t2;
    segment_lattice lat2 = m.build_lattice(t2, {"a", "b", "c"});
    node* score2 = lat2.at(0, 2, 1);
    CHECK(score2->scalar() == doctest::Approx((*g)[2]).epsilon(1e-12));
}

TEST_CASE("full-model nll gradients match finite differences (all variants)") {
    std::vector<std::string> tokens = {"a", "b", "c", "d"};
    segmentation gold = {{0, 2, 1}, {2, 3, 0}, {3, 4, 1}};
    for (composition_kind kind :
         {composition_kind::srnn, composition_kind::scnn, composition_kind::sconcate}) {
        model m(tiny_cfg(kind), kVocab, kSegKeys);
        auto build = [&](tape& t) { return m.sequence_nll(t, tokens, gold); };
        auto rep = gradcheck::check_loss(trainable_params(m), build, 1e-5);
        INFO(to_string(kind), " worst: ", rep.worst);
        CHECK(rep.max_err < 1e-4);
    }
}

TEST_CASE("gradients reach the segment table only when enabled") {
    std::vector<std::string> tokens = {"a", "b"};
    segmentation gold = {{0, 2, 1}};

    model with(tiny_cfg(composition_kind::srnn, true), kVocab, kSegKeys);
    tape t1;
    t1.backward(with.sequence_nll(t1, tokens, gold));
    REQUIRE(with.seg_table.has("a_b"));
    const autodiff::tensor* g = t1.grad_of(*with.seg_table.entries.at("a_b"));
    REQUIRE(g != nullptr);
    double norm = 0.0;
    for (double v : g->data) norm += std::fabs(v);
    CHECK(norm > 0.0);

    model without(tiny_cfg(composition_kind::srnn, false), kVocab, kSegKeys);
    CHECK(without.seg_table.keys.empty());
    tape t2;
    CHECK_NOTHROW(t2.backward(without.sequence_nll(t2, tokens, gold)));
}

TEST_CASE("predict always yields a valid cover, even when L forces singletons") {
    model_config cfg = tiny_cfg(composition_kind::sconcate);
    cfg.max_seg_len = 1;
    model m(cfg, kVocab, kSegKeys);
    std::vector<std::string> tokens = {"a", "b", "c", "d", "e"};
    segmentation pred = m.predict(tokens);
    CHECK_NOTHROW(validate_segmentation(pred, 5, 1, 2));
    CHECK(pred.size() == 5);
}

TEST_CASE("unresolved labels or length are config errors") {
    model_config cfg = tiny_cfg(composition_kind::srnn);
    cfg.labels.clear();
    CHECK_THROWS_AS(model(cfg, kVocab, kSegKeys), config_error);

    model_config cfg2 = tiny_cfg(composition_kind::srnn);
    cfg2.max_seg_len = 0;
    CHECK_THROWS_AS(model(cfg2, kVocab, kSegKeys), config_error);
}

TEST_CASE("checkpoints round-trip bitwise") {
    model m(tiny_cfg(composition_kind::srnn), kVocab, kSegKeys);
    std::ostringstream first;
    save_checkpoint(m, first);

    std::istringstream in(first.str());
    model back = load_checkpoint_stream(in);

    std::ostringstream second;
    save_checkpoint(back, second);
    CHECK(first.str() == second.str());

    REQUIRE(back.store.all().size() == m.store.all().size());
    auto it = m.store.all().begin();
    auto jt = back.store.all().begin();
    for (; it != m.store.all().end(); ++it, ++jt) {
        CHECK(it->name == jt->name);
        CHECK(it->trainable == jt->trainable);
        CHECK(it->value.shape == jt->value.shape);
        CHECK(it->value.data == jt->value.data);
    }

    std::vector<std::string> tokens = {"a", "b", "zzz", "c"};
    CHECK(m.predict(tokens) == back.predict(tokens));
    CHECK(back.cfg.labels == m.cfg.labels);
    CHECK(back.seg_table.keys == m.seg_table.keys);
    CHECK(back.unit_tuned.unk != nullptr);
}

TEST_CASE("checkpoint rejects garbage and wrong versions") {
    std::istringstream garbage("not a checkpoint at all");
    CHECK_THROWS_AS(load_checkpoint_stream(garbage), checkpoint_error);

    model m(tiny_cfg(composition_kind::scnn), kVocab, kSegKeys);
    std::ostringstream out;
    save_checkpoint(m, out);
    std::string bytes = out.str();
    bytes[9] = 99;  // corrupt the version field
    std::istringstream in(bytes);
    CHECK_THROWS_WITH_AS(load_checkpoint_stream(in), doctest::Contains("version"), checkpoint_error);

    std::istringstream truncated(out.str().substr(0, out.str().size() / 2));
    CHECK_THROWS_AS(load_checkpoint_stream(truncated), checkpoint_error);
}

TEST_CASE("config text round-trips through the checkpoint") {
    model_config cfg = tiny_cfg(composition_kind::sconcate);
    cfg.separator = "";
    model m(cfg, kVocab, kSegKeys);
    std::ostringstream out;
    save_checkpoint(m, out);
    std::istringstream in(out.str());
    model back = load_checkpoint_stream(in);
    CHECK(back.cfg.sep() == "");
    CHECK(back.cfg.comp == composition_kind::sconcate);
    CHECK(back.cfg.max_seg_len == 2);
    CHECK(back.cfg.dim_semb == 3);
}

TEST_CASE("collect_vocab and segment keys keep first-occurrence order") {
    labeled_corpus c;
    c.task = task_kind::span_labeled;
    c.labels = {"NONE", "X"};
    c.sequences.push_back({{"b", "a", "b"}, {{0, 2, 1}, {2, 3, 0}}});
    c.sequences.push_back({{"a", "c"}, {{0, 2, 1}}});
    CHECK(collect_vocab(c) == std::vector<std::string>{"b", "a", "c"});
    CHECK(collect_segment_keys(c, "_") == std::vector<std::string>{"b_a", "b", "a_c"});
    CHECK(max_gold_segment_length(c) == 2);
}
