#ifndef FFK_SLP_HPP
#define FFK_SLP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffk/embed.hpp"
#include "ffk/field.hpp"
#include "ffk/linear.hpp"

namespace ffk {

// Straight-line program over a field. Nodes reference earlier nodes only;
// parsed programs share common subexpressions through structural hashing.
class Slp {
public:
    enum class Op : std::uint8_t { Input, Const, Add, Sub, Mul, Div };
    struct Node {
        Op op;
        std::uint32_t a = 0, b = 0;   // operand node ids (Input: a = variable index)
        FieldElement cval;            // Const payload
    };

    unsigned n_vars = 0;
    std::vector<Node> nodes;
    std::vector<std::uint32_t> outputs;
    bool division_free = true;

    unsigned time() const;    // arithmetic node count
    unsigned space() const;   // peak live registers under the recorded schedule

    // evaluation over any commutative ring; Ops must provide
    //   V add(V,V), sub, mul, div, V from_const(const FieldElement&)
    template <class Ops>
    std::vector<typename Ops::V> eval(const std::vector<typename Ops::V>& inputs,
                                      const Ops& ops) const {
        std::vector<typename Ops::V> tape;
        tape.reserve(nodes.size());
        for (const auto& nd : nodes) {
            switch (nd.op) {
                case Op::Input: tape.push_back(inputs.at(nd.a)); break;
                case Op::Const: tape.push_back(ops.from_const(nd.cval)); break;
                case Op::Add: tape.push_back(ops.add(tape[nd.a], tape[nd.b])); break;
                case Op::Sub: tape.push_back(ops.sub(tape[nd.a], tape[nd.b])); break;
                case Op::Mul: tape.push_back(ops.mul(tape[nd.a], tape[nd.b])); break;
                case Op::Div: tape.push_back(ops.div(tape[nd.a], tape[nd.b])); break;
            }
        }
        std::vector<typename Ops::V> out;
        out.reserve(outputs.size());
        for (auto i : outputs) out.push_back(tape[i]);
        return out;
    }
};

struct ParsedSystem {
    Field base;
    std::vector<std::string> var_names;
    std::vector<Slp> polys;       // one single-output program per polynomial
    std::vector<long> degrees;    // symbolic degrees from the expression trees
};

// Input grammar (line oriented, # comments):
//   field p=<prime> ext=<k>
//   vars X1 X2 ... Xn
//   poly <infix expression>     (operators + - * / ^, integer literals)
// Division is only admitted by constant subexpressions, keeping every
// program division-free.
ParsedSystem parse_system(const std::string& text);

// same program with constants carried into a larger field
Slp embed_slp(const Slp& s, const FieldEmbedding& emb);

// returns a program in variables y computing F(M^{-1}(y - shift))
Slp apply_linear_change(const Slp& s, const LinearForms& forms);

// plain field evaluation of several single-output programs
Vec eval_system(const std::vector<Slp>& sys, const Vec& point);

// row i, column j = dF_i/dX_j at the point (dual-number evaluation)
Matrix jacobian_at(const std::vector<Slp>& sys, const Vec& point);

} // namespace ffk

#endif
