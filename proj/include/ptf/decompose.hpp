#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptf/polynomial.hpp"
#include "ptf/restrictions.hpp"

namespace ptf::structure {

enum class NodeKind { Branch, Regular, Determined, Capped };

const char* to_string(NodeKind k);

struct DecompositionNode {
    std::string path;           // "+-+" assignment string along the tree; "." at the root
    size_t parent = SIZE_MAX;
    uint32_t depth = 0;
    NodeKind kind = NodeKind::Branch;
    double eps_out = 0.0;       // Regular leaves: the regularity level satisfied
    int determined_sign = 0;    // Determined leaves
    double bias = 0.0;          // Determined leaves: Pr[f != sign]
    uint32_t block_size = 0;    // Branch nodes: number of variables restricted below
    std::vector<uint32_t> block;  // the restricted variables, heaviest first
    std::vector<size_t> children;
    double mass = 0.0;          // probability mass of the node's restriction
};

struct DecomposeConfig {
    double a_d = 1.0;
    double b_d = 1.0;
    double c_d = 1.0;
    double alpha_d = 0.05;      // drives the default depth cap
    double delta_d = 1.0;       // reported alongside leaf noise-sensitivity checks
    uint32_t depth_cap = 0;     // 0: ceil(log_{1/(1-alpha_d)}(1/eps))
    uint64_t max_nodes = uint64_t{1} << 20;
    uint64_t sampled_paths = 0;  // 0: exhaustive branching
    uint64_t bias_samples = 20000;
    uint64_t seed = 1;
};

struct DecompositionTree {
    std::vector<DecompositionNode> nodes;  // nodes[0] is the root
    double eps = 0.0;
    bool exhaustive = true;
    uint32_t depth_cap = 0;

    double regular_mass() const;
    double determined_mass() const;
    double capped_mass() const;
    uint32_t depth() const;

    // One node per line: <path> <classification> <epsilon_out|bias> <block-size>
    std::string export_text() const;
    // epsilon,depth,regular_mass,determined_mass,capped_mass
    std::string summary_csv() const;
};

uint32_t default_depth_cap(double eps, double alpha_d);

// Recursive restriction tree: each node is classified Regular when the
// restricted polynomial is (a_d eps)-regular, Determined when the partial
// assignment is (b_d eps)-determining, and otherwise branches on all (or
// sampled) assignments of the top min(K, L) sorted variables, up to the
// depth cap.
DecompositionTree decompose(const Ptf& f, double eps, const DecomposeConfig& cfg = {}, int threads = 0);

}  // namespace ptf::structure
