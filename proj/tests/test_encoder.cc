#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "semicrf/encoder.h"
#include "semicrf/rng.h"

using namespace semicrf;
using autodiff::node;
using autodiff::parameter_store;
using autodiff::tape;
using autodiff::tensor;

namespace {

model_config small_cfg() {
    model_config cfg;
    cfg.dim_unit_pre = 4;
    cfg.dim_unit_tuned = 3;
    cfg.dim_input = 5;
    cfg.dim_hidden = 4;
    return cfg;
}

struct fixture {
    parameter_store store;
    rng r{13};
    embedding_table pre;
    embedding_table tuned;
    encoder_params enc;

    explicit fixture(const model_config& cfg) {
        pre.name = "pre";
        pre.dim = cfg.dim_unit_pre;
        pre.trainable = false;
        tuned.name = "tuned";
        tuned.dim = cfg.dim_unit_tuned;
        tuned.trainable = true;
        for (const char* tok : {"a", "b", "c"}) {
            tensor vp = tensor::zeros({cfg.dim_unit_pre});
            glorot_fill(vp, r);
            pre.add(store, tok, std::move(vp));
            tensor vt = tensor::zeros({cfg.dim_unit_tuned});
            glorot_fill(vt, r);
            tuned.add(store, tok, std::move(vt));
        }
        tensor unk = tensor::zeros({cfg.dim_unit_tuned});
        glorot_fill(unk, r);
        tuned.ensure_unk(store, std::move(unk));
        param_source src{store, &r, false};
        enc = make_encoder_params(src, cfg);
    }
};

}  // namespace

TEST_CASE("input_unit_repr is zero under zero weights") {
    model_config cfg = small_cfg();
    fixture f(cfg);
    for (auto* p : {f.enc.w_input_pre, f.enc.w_input_tuned, f.enc.b_input}) {
        std::fill(p->value.data.begin(), p->value.data.end(), 0.0);
    }
    tape t;
    node* i = input_unit_repr(t, f.enc, f.pre, f.tuned, "a");
    for (double v : i->value.data) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("input unit representation has the configured size for any token") {
    model_config cfg;  // stock dimensions
    fixture f(cfg);
    tape t;
    CHECK(input_unit_repr(t, f.enc, f.pre, f.tuned, "a")->value.size() == 100);
    CHECK(input_unit_repr(t, f.enc, f.pre, f.tuned, "never-seen")->value.size() == 100);
}

TEST_CASE("OOV token in both tables reduces to the UNK path") {
    model_config cfg = small_cfg();
    fixture f(cfg);
    tape t;
    node* oov = input_unit_repr(t, f.enc, f.pre, f.tuned, "zzz");
    // expected: ReLU(W_tuned unk + b); the fixed-table term contributes zero
    node* expected = relu(add(matvec(t.leaf(*f.enc.w_input_tuned), t.leaf(*f.tuned.unk)),
                              t.leaf(*f.enc.b_input)));
    CHECK(oov->value.data == expected->value.data);
}

TEST_CASE("encode handles a single token and keeps sizes") {
    model_config cfg = small_cfg();
    fixture f(cfg);
    tape t;
    encoded_sequence es = encode(t, f.enc, f.pre, f.tuned, {"a"});
    REQUIRE(es.h.size() == 1);
    REQUIRE(es.fwd_h.size() == 1);
    REQUIRE(es.bwd_h.size() == 1);
    CHECK(es.h[0]->value.size() == cfg.dim_hidden);

    CHECK_THROWS_AS(encode(t, f.enc, f.pre, f.tuned, {}), autodiff::precondition_error);
}

TEST_CASE("stock config yields 100-dimensional per-unit representations") {
    model_config cfg;
    fixture f(cfg);
    tape t;
    encoded_sequence es = encode(t, f.enc, f.pre, f.tuned, {"a", "b"});
    CHECK(es.h[0]->value.size() == 100);
    CHECK(es.h[1]->value.size() == 100);
}

TEST_CASE("reversing input with swapped directions mirrors the states") {
    model_config cfg = small_cfg();
    fixture f(cfg);
    std::vector<std::string> tokens = {"a", "b", "c", "a"};
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());

    encoder_params swapped = f.enc;
    std::swap(swapped.fwd, swapped.bwd);
    std::swap(swapped.w_hidden_fwd, swapped.w_hidden_bwd);

    tape t1;
    encoded_sequence a = encode(t1, f.enc, f.pre, f.tuned, tokens);
    tape t2;
    encoded_sequence b = encode(t2, swapped, f.pre, f.tuned, reversed);

    std::size_t n = tokens.size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(a.fwd_h[i]->value.data == b.bwd_h[n - 1 - i]->value.data);
        CHECK(a.bwd_h[i]->value.data == b.fwd_h[n - 1 - i]->value.data);
        CHECK(a.h[i]->value.data == b.h[n - 1 - i]->value.data);
    }
}

TEST_CASE("H_i depends on distant tokens") {
    model_config cfg = small_cfg();
    fixture f(cfg);
    tape t1;
    encoded_sequence a = encode(t1, f.enc, f.pre, f.tuned, {"a", "b", "c"});
    tape t2;
    encoded_sequence b = encode(t2, f.enc, f.pre, f.tuned, {"a", "b", "a"});
    // changing the last token must change the first position's representation
    CHECK(a.h[0]->value.data != b.h[0]->value.data);
}

TEST_CASE("H entries are nonnegative and bitwise deterministic") {
    model_config cfg = small_cfg();
    fixture f(cfg);
    auto run = [&] {
        tape t;
        encoded_sequence es = encode(t, f.enc, f.pre, f.tuned, {"c", "b", "a", "zzz"});
        std::vector<double> flat;
        for (node* h : es.h) {
            flat.insert(flat.end(), h->value.data.begin(), h->value.data.end());
        }
        return flat;
    };
    std::vector<double> first = run();
    for (double v : first) {
        CHECK(v >= 0.0);
    }
    CHECK(first == run());
}
