#include "ptf/decompose.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ptf/rng.hpp"
#include "ptf/weights.hpp"

namespace ptf::structure {

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Branch: return "branch";
        case NodeKind::Regular: return "regular";
        case NodeKind::Determined: return "determined";
        case NodeKind::Capped: return "capped";
    }
    return "?";
}

uint32_t default_depth_cap(double eps, double alpha_d) {
    if (!(eps > 0.0) || eps >= 1.0) return 1;
    if (!(alpha_d > 0.0) || alpha_d >= 1.0) throw std::invalid_argument("alpha_d must lie in (0, 1)");
    return static_cast<uint32_t>(std::ceil(std::log(1.0 / eps) / std::log(1.0 / (1.0 - alpha_d))));
}

double DecompositionTree::regular_mass() const {
    double m = 0.0;
    for (const auto& node : nodes)
        if (node.kind == NodeKind::Regular) m += node.mass;
    return m;
}

double DecompositionTree::determined_mass() const {
    double m = 0.0;
    for (const auto& node : nodes)
        if (node.kind == NodeKind::Determined) m += node.mass;
    return m;
}

double DecompositionTree::capped_mass() const {
    double m = 0.0;
    for (const auto& node : nodes)
        if (node.kind == NodeKind::Capped) m += node.mass;
    return m;
}

uint32_t DecompositionTree::depth() const {
    uint32_t d = 0;
    for (const auto& node : nodes) d = std::max(d, node.depth);
    return d;
}

std::string DecompositionTree::export_text() const {
    std::ostringstream out;
    for (const auto& node : nodes) {
        out << (node.path.empty() ? "." : node.path) << ' ' << to_string(node.kind) << ' ';
        if (node.kind == NodeKind::Regular)
            out << format_double(node.eps_out);
        else if (node.kind == NodeKind::Determined)
            out << format_double(node.bias);
        else
            out << 0;
        out << ' ' << node.block_size << '\n';
    }
    return out.str();
}

std::string DecompositionTree::summary_csv() const {
    std::ostringstream out;
    out << "epsilon,depth,regular_mass,determined_mass,capped_mass\n";
    out << format_double(eps) << ',' << depth() << ',' << format_double(regular_mass()) << ','
        << format_double(determined_mass()) << ',' << format_double(capped_mass()) << '\n';
    return out.str();
}

namespace {

struct Builder {
    const Ptf& f;
    double eps;
    const DecomposeConfig& cfg;
    uint32_t depth_cap;
    uint32_t block_cap;  // L
    DecompositionTree tree;

    // Returns true when the node is a leaf after classification.
    bool classify(size_t node_idx, const Restriction& context, const Polynomial& restricted) {
        DecompositionNode& node = tree.nodes[node_idx];

        bool variable_free = true;
        for (const auto& [mono, coeff] : restricted.terms())
            if (!mono.constant()) {
                variable_free = false;
                break;
            }
        if (variable_free) {
            node.kind = NodeKind::Determined;
            node.determined_sign = sign_pm(restricted.constant_term() - f.theta);
            node.bias = 0.0;
            return true;
        }

        if (is_regular(restricted, cfg.a_d * eps)) {
            node.kind = NodeKind::Regular;
            node.eps_out = cfg.a_d * eps;
            return true;
        }

        const uint64_t node_seed = derive_seed(cfg.seed, static_cast<uint64_t>(node_idx));
        const DeterminingResult dr =
            determining_test(f, context, cfg.b_d * eps, cfg.bias_samples, node_seed, 1);
        if (dr.outcome == Determinacy::Determining) {
            node.kind = NodeKind::Determined;
            node.determined_sign = dr.majority_sign;
            node.bias = dr.bias.value;
            return true;
        }

        if (node.depth >= depth_cap) {
            node.kind = NodeKind::Capped;
            return true;
        }
        node.kind = NodeKind::Branch;
        return false;
    }

    size_t add_node(size_t parent, const std::string& path, uint32_t depth, double mass) {
        if (tree.nodes.size() >= cfg.max_nodes)
            throw budget_error("decomposition tree exceeded the node budget of " +
                               std::to_string(cfg.max_nodes));
        DecompositionNode node;
        node.parent = parent;
        node.path = path;
        node.depth = depth;
        node.mass = mass;
        tree.nodes.push_back(std::move(node));
        return tree.nodes.size() - 1;
    }

    std::vector<uint32_t> branch_block(const Polynomial& restricted) const {
        const WeightProfile wp = weight_profile(restricted);
        const uint32_t k = critical_index(wp, eps);
        const uint32_t m = std::min(std::max(k, 1u), block_cap);
        return std::vector<uint32_t>(wp.perm.begin(), wp.perm.begin() + m);
    }

    void build_exhaustive(size_t node_idx, const Restriction& context, const Polynomial& restricted) {
        if (classify(node_idx, context, restricted)) return;
        const std::vector<uint32_t> block = branch_block(restricted);
        const uint32_t m = static_cast<uint32_t>(block.size());
        tree.nodes[node_idx].block = block;
        tree.nodes[node_idx].block_size = m;
        const double child_mass = tree.nodes[node_idx].mass * std::ldexp(1.0, -static_cast<int>(m));
        for (uint64_t assignment = 0; assignment < (uint64_t{1} << m); ++assignment) {
            Restriction child_context = context;
            std::string path = tree.nodes[node_idx].path;
            Restriction block_only;
            for (uint32_t b = 0; b < m; ++b) {
                const int value = (assignment >> b) & 1u ? 1 : -1;
                child_context.assign(block[b], value);
                block_only.assign(block[b], value);
                path.push_back(value > 0 ? '+' : '-');
            }
            const size_t child =
                add_node(node_idx, path, tree.nodes[node_idx].depth + 1, child_mass);
            tree.nodes[node_idx].children.push_back(child);
            build_exhaustive(child, child_context, restricted.restricted(block_only));
        }
    }

    void build_sampled() {
        // Walks random root-to-leaf paths; identical prefixes share nodes and
        // leaf mass is the visit frequency.
        const double path_mass = 1.0 / static_cast<double>(cfg.sampled_paths);
        for (uint64_t p = 0; p < cfg.sampled_paths; ++p) {
            RandomStream rs(cfg.seed, p);
            size_t node_idx = 0;
            Restriction context;
            Polynomial restricted = f.poly;
            while (true) {
                DecompositionNode& node = tree.nodes[node_idx];
                if (node.kind == NodeKind::Branch && node.children.empty()) {
                    if (classify(node_idx, context, restricted)) {
                        tree.nodes[node_idx].mass += path_mass;
                        break;
                    }
                    tree.nodes[node_idx].block = branch_block(restricted);
                    tree.nodes[node_idx].block_size =
                        static_cast<uint32_t>(tree.nodes[node_idx].block.size());
                }
                if (tree.nodes[node_idx].kind != NodeKind::Branch) {
                    tree.nodes[node_idx].mass += path_mass;
                    break;
                }
                // Sample an assignment of this node's block.
                Restriction block_only;
                std::string path = tree.nodes[node_idx].path;
                for (uint32_t v : tree.nodes[node_idx].block) {
                    const int value = rs.next_sign();
                    context.assign(v, value);
                    block_only.assign(v, value);
                    path.push_back(value > 0 ? '+' : '-');
                }
                restricted = restricted.restricted(block_only);
                size_t child = SIZE_MAX;
                for (size_t c : tree.nodes[node_idx].children)
                    if (tree.nodes[c].path == path) {
                        child = c;
                        break;
                    }
                if (child == SIZE_MAX) {
                    child = add_node(node_idx, path, tree.nodes[node_idx].depth + 1, 0.0);
                    tree.nodes[node_idx].children.push_back(child);
                }
                node_idx = child;
            }
        }
    }
};

}  // namespace

DecompositionTree decompose(const Ptf& f, double eps, const DecomposeConfig& cfg, int threads) {
    (void)threads;  // classification work is per-node and cheap; kept serial for determinism
    if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("eps must lie in (0, 1)");
    if (!f.poly.multilinear()) throw std::invalid_argument("decompose requires a multilinear PTF");

    Builder b{f, eps, cfg,
              cfg.depth_cap > 0 ? cfg.depth_cap : default_depth_cap(eps, cfg.alpha_d),
              determining_block_length(eps, cfg.c_d),
              {}};
    b.tree.eps = eps;
    b.tree.exhaustive = cfg.sampled_paths == 0;
    b.tree.depth_cap = b.depth_cap;
    b.add_node(SIZE_MAX, "", 0, 1.0);
    if (cfg.sampled_paths == 0) {
        b.build_exhaustive(0, Restriction{}, f.poly);
    } else {
        b.tree.nodes[0].mass = 0.0;
        b.build_sampled();
    }
    return b.tree;
}

}  // namespace ptf::structure
