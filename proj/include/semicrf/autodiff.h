#pragma once

#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace autodiff {

struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Dense row-major tensor of doubles, rank 1 or 2.
struct tensor {
    std::vector<int> shape;
    std::vector<double> data;

    tensor() = default;
    tensor(std::vector<int> shape_, std::vector<double> data_);

    static tensor zeros(std::vector<int> shape);
    static tensor scalar(double v);
    static tensor vec(std::vector<double> data);

    int size() const { return static_cast<int>(data.size()); }
    int rank() const { return static_cast<int>(shape.size()); }
    int rows() const { return shape[0]; }
    int cols() const { return shape[1]; }

    double& operator[](int i) { return data[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return data[static_cast<std::size_t>(i)]; }
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * shape[1] + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * shape[1] + j]; }
};

bool same_shape(const tensor& a, const tensor& b);
std::string shape_str(const tensor& t);

class tape;

// One value in a forward pass. Owned by its tape; valid while the tape lives.
struct node {
    tensor value;
    tensor grad;                     // same shape as value; empty when grads are off
    const char* op = "";
    std::function<void()> backprop;  // scatters this node's grad into its inputs
    tape* owner = nullptr;

    double scalar() const { return value.data[0]; }
    bool is_scalar() const { return value.size() == 1; }
};

// Named model weight. Values persist across tapes; the trainable flag gates
// optimizer updates (a non-trainable parameter stays bitwise identical).
struct parameter {
    std::string name;
    tensor value;
    bool trainable = true;
};

// Owns parameters, keeps creation order (checkpoints serialize in this order).
class parameter_store {
public:
    parameter* create(const std::string& name, tensor init, bool trainable = true);
    parameter* find(const std::string& name);
    parameter* require(const std::string& name);

    const std::deque<parameter>& all() const { return params_; }
    std::deque<parameter>& all() { return params_; }

private:
    std::deque<parameter> params_;
    std::unordered_map<std::string, parameter*> index_;
};

// Records one forward pass; node creation order is a topological order.
// Construct with with_grads = false for inference-only passes.
class tape {
public:
    explicit tape(bool with_grads = true) : with_grads_(with_grads) {}
    tape(const tape&) = delete;
    tape& operator=(const tape&) = delete;

    node* input(tensor value, const char* op = "input");
    node* scalar_input(double v);

    // Leaf for a parameter, memoized: repeated lookups of the same parameter
    // within one tape return the same node so gradients accumulate in one place.
    node* leaf(parameter& p);

    bool with_grads() const { return with_grads_; }

    // Seeds d(loss)/d(loss) = 1 and runs every node's backprop in reverse
    // creation order. loss must be a scalar node on this tape. One backward
    // pass per tape; gradients are not re-zeroed between calls.
    void backward(node* loss);

    const std::vector<std::pair<parameter*, node*>>& touched() const { return touched_; }
    const tensor* grad_of(const parameter& p) const;

    std::size_t size() const { return nodes_.size(); }

    node* alloc(tensor value, const char* op);

private:
    std::deque<node> nodes_;
    std::vector<std::pair<parameter*, node*>> touched_;
    std::unordered_map<const parameter*, node*> leaf_index_;
    bool with_grads_;
};

// y = W x. Backward: dW += g x^T, dx += W^T g.
node* matvec(node* w, node* x);

node* add(node* a, node* b);
node* sub(node* a, node* b);
node* concat(const std::vector<node*>& parts);  // rank-1 operands
node* relu(node* x);
node* tanh(node* x);
node* sigmoid(node* x);
node* pointwise_mul(node* a, node* b);
node* pointwise_max(node* a, node* b);

// m + log sum exp(x_i - m) over scalar nodes, m = max x_i.
node* logsumexp(const std::vector<node*>& xs);

node* sum(node* x);             // reduce to scalar
node* dot(node* a, node* b);    // rank-1, scalar result
node* row(node* w, int i);      // rank-2 -> rank-1 row view (copy)

}
