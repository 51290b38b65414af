#include "semicrf/autodiff.h"

#include <algorithm>
#include <cmath>

namespace autodiff {

namespace {

int shape_product(const std::vector<int>& shape) {
    int p = 1;
    for (int d : shape) {
        p *= d;
    }
    return p;
}

void check_same_tape(node* a, node* b) {
    if (a->owner != b->owner) {
        throw precondition_error("operands belong to different tapes");
    }
}

bool grads_on(node* n) {
    return n->owner->with_grads();
}

}  // namespace

tensor::tensor(std::vector<int> shape_, std::vector<double> data_)
    : shape(std::move(shape_)), data(std::move(data_)) {
    if (shape_product(shape) != static_cast<int>(data.size())) {
        throw shape_error("tensor: data length does not match shape");
    }
}

tensor tensor::zeros(std::vector<int> shape) {
    int n = shape_product(shape);
    return tensor(std::move(shape), std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

tensor tensor::scalar(double v) {
    return tensor({1}, {v});
}

tensor tensor::vec(std::vector<double> data) {
    int n = static_cast<int>(data.size());
    return tensor({n}, std::move(data));
}

bool same_shape(const tensor& a, const tensor& b) {
    return a.shape == b.shape;
}

std::string shape_str(const tensor& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.shape.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(t.shape[i]);
    }
    return s + ")";
}

parameter* parameter_store::create(const std::string& name, tensor init, bool trainable) {
    if (index_.count(name)) {
        throw precondition_error("duplicate parameter name: " + name);
    }
    params_.push_back(parameter{name, std::move(init), trainable});
    parameter* p = &params_.back();
    index_[name] = p;
    return p;
}

parameter* parameter_store::find(const std::string& name) {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : it->second;
}

parameter* parameter_store::require(const std::string& name) {
    parameter* p = find(name);
    if (!p) {
        throw precondition_error("unknown parameter: " + name);
    }
    return p;
}

node* tape::alloc(tensor value, const char* op) {
    nodes_.push_back(node{});
    node* n = &nodes_.back();
    n->value = std::move(value);
    if (with_grads_) {
        n->grad = tensor::zeros(n->value.shape);
    }
    n->op = op;
    n->owner = this;
    return n;
}

node* tape::input(tensor value, const char* op) {
    return alloc(std::move(value), op);
}

node* tape::scalar_input(double v) {
    return alloc(tensor::scalar(v), "input");
}

node* tape::leaf(parameter& p) {
    auto it = leaf_index_.find(&p);
    if (it != leaf_index_.end()) {
        return it->second;
    }
    node* n = alloc(p.value, "leaf");
    leaf_index_[&p] = n;
    touched_.emplace_back(&p, n);
    return n;
}

void tape::backward(node* loss) {
    if (loss->owner != this) {
        throw precondition_error("backward: node is not on this tape");
    }
    if (!loss->is_scalar()) {
        throw precondition_error("backward: loss must be scalar, got " + shape_str(loss->value));
    }
    if (!with_grads_) {
        throw precondition_error("backward: tape was built without gradients");
    }
    loss->grad[0] = 1.0;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
        if (it->backprop) {
            it->backprop();
        }
    }
}

const tensor* tape::grad_of(const parameter& p) const {
    auto it = leaf_index_.find(&p);
    return it == leaf_index_.end() ? nullptr : &it->second->grad;
}

node* matvec(node* w, node* x) {
    check_same_tape(w, x);
    if (w->value.rank() != 2 || x->value.rank() != 1 || w->value.cols() != x->value.size()) {
        throw shape_error("matvec: shape mismatch " + shape_str(w->value) + " vs " + shape_str(x->value));
    }
    int m = w->value.rows();
    int n = w->value.cols();
    tensor out = tensor::zeros({m});
    for (int i = 0; i < m; ++i) {
        const double* wrow = &w->value.data[static_cast<std::size_t>(i) * n];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += wrow[j] * x->value[j];
        }
        out[i] = acc;
    }
    node* y = w->owner->alloc(std::move(out), "matvec");
    if (grads_on(y)) {
        y->backprop = [w, x, y, m, n] {
            for (int i = 0; i < m; ++i) {
                double g = y->grad[i];
                if (g == 0.0) continue;
                double* wgrow = &w->grad.data[static_cast<std::size_t>(i) * n];
                const double* wrow = &w->value.data[static_cast<std::size_t>(i) * n];
                for (int j = 0; j < n; ++j) {
                    wgrow[j] += g * x->value[j];
                    x->grad[j] += wrow[j] * g;
                }
            }
        };
    }
    return y;
}

node* add(node* a, node* b) {
    check_same_tape(a, b);
    if (!same_shape(a->value, b->value)) {
        throw shape_error("add: shape mismatch " + shape_str(a->value) + " vs " + shape_str(b->value));
    }
    tensor out = a->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] += b->value[i];
    }
    node* y = a->owner->alloc(std::move(out), "add");
    if (grads_on(y)) {
        y->backprop = [a, b, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                a->grad[i] += y->grad[i];
                b->grad[i] += y->grad[i];
            }
        };
    }
    return y;
}

node* sub(node* a, node* b) {
    check_same_tape(a, b);
    if (!same_shape(a->value, b->value)) {
        throw shape_error("sub: shape mismatch " + shape_str(a->value) + " vs " + shape_str(b->value));
    }
    tensor out = a->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] -= b->value[i];
    }
    node* y = a->owner->alloc(std::move(out), "sub");
    if (grads_on(y)) {
        y->backprop = [a, b, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                a->grad[i] += y->grad[i];
                b->grad[i] -= y->grad[i];
            }
        };
    }
    return y;
}

node* concat(const std::vector<node*>& parts) {
    if (parts.empty()) {
        throw precondition_error("concat: empty operand list");
    }
    int total = 0;
    for (node* p : parts) {
        check_same_tape(parts[0], p);
        if (p->value.rank() != 1) {
            throw shape_error("concat: rank-1 operands required, got " + shape_str(p->value));
        }
        total += p->value.size();
    }
    tensor out = tensor::zeros({total});
    int off = 0;
    for (node* p : parts) {
        std::copy(p->value.data.begin(), p->value.data.end(), out.data.begin() + off);
        off += p->value.size();
    }
    node* y = parts[0]->owner->alloc(std::move(out), "concat");
    if (grads_on(y)) {
        std::vector<node*> ps = parts;
        y->backprop = [ps, y] {
            int off = 0;
            for (node* p : ps) {
                for (int i = 0; i < p->value.size(); ++i) {
                    p->grad[i] += y->grad[off + i];
                }
                off += p->value.size();
            }
        };
    }
    return y;
}

node* relu(node* x) {
    tensor out = x->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] = std::max(out[i], 0.0);
    }
    node* y = x->owner->alloc(std::move(out), "relu");
    if (grads_on(y)) {
        y->backprop = [x, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                if (x->value[i] > 0.0) {
                    x->grad[i] += y->grad[i];
                }
            }
        };
    }
    return y;
}

node* tanh(node* x) {
    tensor out = x->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] = std::tanh(out[i]);
    }
    node* y = x->owner->alloc(std::move(out), "tanh");
    if (grads_on(y)) {
        y->backprop = [x, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                double t = y->value[i];
                x->grad[i] += y->grad[i] * (1.0 - t * t);
            }
        };
    }
    return y;
}

node* sigmoid(node* x) {
    tensor out = x->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] = 1.0 / (1.0 + std::exp(-out[i]));
    }
    node* y = x->owner->alloc(std::move(out), "sigmoid");
    if (grads_on(y)) {
        y->backprop = [x, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                double s = y->value[i];
                x->grad[i] += y->grad[i] * s * (1.0 - s);
            }
        };
    }
    return y;
}

node* pointwise_mul(node* a, node* b) {
    check_same_tape(a, b);
    if (!same_shape(a->value, b->value)) {
        throw shape_error("pointwise_mul: shape mismatch " + shape_str(a->value) + " vs " + shape_str(b->value));
    }
    tensor out = a->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] *= b->value[i];
    }
    node* y = a->owner->alloc(std::move(out), "mul");
    if (grads_on(y)) {
        y->backprop = [a, b, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                a->grad[i] += y->grad[i] * b->value[i];
                b->grad[i] += y->grad[i] * a->value[i];
            }
        };
    }
    return y;
}

node* pointwise_max(node* a, node* b) {
    check_same_tape(a, b);
    if (!same_shape(a->value, b->value)) {
        throw shape_error("pointwise_max: shape mismatch " + shape_str(a->value) + " vs " + shape_str(b->value));
    }
    tensor out = a->value;
    for (int i = 0; i < out.size(); ++i) {
        out[i] = std::max(out[i], b->value[i]);
    }
    node* y = a->owner->alloc(std::move(out), "max");
    if (grads_on(y)) {
        // ties route to the first operand
        y->backprop = [a, b, y] {
            for (int i = 0; i < y->grad.size(); ++i) {
                if (a->value[i] >= b->value[i]) {
                    a->grad[i] += y->grad[i];
                } else {
                    b->grad[i] += y->grad[i];
                }
            }
        };
    }
    return y;
}

node* logsumexp(const std::vector<node*>& xs) {
    if (xs.empty()) {
        throw precondition_error("logsumexp: empty input");
    }
    double m = xs[0]->scalar();
    for (node* x : xs) {
        check_same_tape(xs[0], x);
        if (!x->is_scalar()) {
            throw shape_error("logsumexp: scalar operands required, got " + shape_str(x->value));
        }
        m = std::max(m, x->scalar());
    }
    double s = 0.0;
    for (node* x : xs) {
        s += std::exp(x->scalar() - m);
    }
    node* y = xs[0]->owner->alloc(tensor::scalar(m + std::log(s)), "logsumexp");
    if (grads_on(y)) {
        std::vector<node*> in = xs;
        y->backprop = [in, y] {
            double g = y->grad[0];
            if (g == 0.0) return;
            double v = y->scalar();
            for (node* x : in) {
                x->grad[0] += g * std::exp(x->scalar() - v);
            }
        };
    }
    return y;
}

node* sum(node* x) {
    double acc = 0.0;
    for (int i = 0; i < x->value.size(); ++i) {
        acc += x->value[i];
    }
    node* y = x->owner->alloc(tensor::scalar(acc), "sum");
    if (grads_on(y)) {
        y->backprop = [x, y] {
            double g = y->grad[0];
            for (int i = 0; i < x->grad.size(); ++i) {
                x->grad[i] += g;
            }
        };
    }
    return y;
}

node* dot(node* a, node* b) {
    check_same_tape(a, b);
    if (a->value.rank() != 1 || !same_shape(a->value, b->value)) {
        throw shape_error("dot: shape mismatch " + shape_str(a->value) + " vs " + shape_str(b->value));
    }
    double acc = 0.0;
    for (int i = 0; i < a->value.size(); ++i) {
        acc += a->value[i] * b->value[i];
    }
    node* y = a->owner->alloc(tensor::scalar(acc), "dot");
    if (grads_on(y)) {
        y->backprop = [a, b, y] {
            double g = y->grad[0];
            for (int i = 0; i < a->grad.size(); ++i) {
                a->grad[i] += g * b->value[i];
                b->grad[i] += g * a->value[i];
            }
        };
    }
    return y;
}

node* row(node* w, int i) {
    if (w->value.rank() != 2 || i < 0 || i >= w->value.rows()) {
        throw shape_error("row: index " + std::to_string(i) + " out of range for " + shape_str(w->value));
    }
    int n = w->value.cols();
    tensor out = tensor::zeros({n});
    for (int j = 0; j < n; ++j) {
        out[j] = w->value.at(i, j);
    }
    node* y = w->owner->alloc(std::move(out), "row");
    if (grads_on(y)) {
        y->backprop = [w, y, i, n] {
            for (int j = 0; j < n; ++j) {
                w->grad.at(i, j) += y->grad[j];
            }
        };
    }
    return y;
}

}
