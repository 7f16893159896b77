#include "qmv/wrong_set.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "qmv/subsets.hpp"

namespace qmv {

namespace {

// Hopcroft-Karp on the bipartite graph rows -> cols induced by the cells.
class HopcroftKarp {
  public:
    HopcroftKarp(int n_left, int n_right) : adj_(n_left + 1), match_left_(n_left + 1, 0),
                                            match_right_(n_right + 1, 0), dist_(n_left + 1, 0),
                                            n_left_(n_left) {}

    void add_edge(int u, int v) { adj_[u].push_back(v); }

    int solve() {
        int matching = 0;
        while (bfs()) {
            for (int u = 1; u <= n_left_; ++u)
                if (match_left_[u] == 0 && dfs(u)) ++matching;
        }
        return matching;
    }

    int matched_col(int row) const { return match_left_[row]; }

  private:
    static constexpr int kInf = 1 << 30;

    bool bfs() {
        std::queue<int> q;
        for (int u = 1; u <= n_left_; ++u) {
            if (match_left_[u] == 0) {
                dist_[u] = 0;
                q.push(u);
            } else {
                dist_[u] = kInf;
            }
        }
        bool reachable = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                int w = match_right_[v];
                if (w == 0) {
                    reachable = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable;
    }

    bool dfs(int u) {
        for (int v : adj_[u]) {
            int w = match_right_[v];
            if (w == 0 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_, match_right_, dist_;
    int n_left_;
};

} // namespace

MatchingResult max_independent_subset(const std::vector<Cell>& cells, int n) {
    HopcroftKarp hk(n, n);
    for (const auto& [r, c] : cells) {
        if (r < 1 || r > n || c < 1 || c > n)
            throw std::invalid_argument("max_independent_subset: cell out of range");
        hk.add_edge(r, c);
    }
    MatchingResult result;
    result.size = hk.solve();
    for (int r = 1; r <= n; ++r)
        if (hk.matched_col(r) != 0) result.witness.emplace_back(r, hk.matched_col(r));
    return result;
}

std::vector<uint64_t> WrongSet::row_masks() const {
    if (n > 64) throw std::invalid_argument("row_masks: n > 64");
    std::vector<uint64_t> masks(static_cast<size_t>(n) + 1, 0);
    for (const auto& [r, c] : cells) masks[r] |= 1ULL << (c - 1);
    return masks;
}

bool WrongSet::is_independent() const {
    std::vector<int> row_count(n + 1, 0), col_count(n + 1, 0);
    for (const auto& [r, c] : cells)
        if (++row_count[r] > 1 || ++col_count[c] > 1) return false;
    return true;
}

WrongSet wrong_set_from_cells(int n, std::vector<Cell> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    WrongSet w;
    w.n = n;
    w.cells = std::move(cells);
    std::vector<int> row_count(n + 1, 0);
    for (const auto& [r, c] : w.cells) {
        if (r < 1 || r > n || c < 1 || c > n) throw std::invalid_argument("wrong set cell out of range");
        ++row_count[r];
    }
    for (int r = 1; r <= n; ++r) {
        if (row_count[r] > 0) ++w.w_rows;
        w.max_row_count = std::max(w.max_row_count, row_count[r]);
    }
    w.w_prime = max_independent_subset(w.cells, n).size;
    w.q = w.cells.empty()
              ? 0.0
              : std::max(static_cast<double>(w.w_prime),
                         std::min(static_cast<double>(w.cells.size()), std::sqrt(static_cast<double>(n))));
    return w;
}

WrongSet wrong_set(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c) {
    if (a.rows() != c.rows() || b.cols() != c.cols() || a.cols() != b.rows())
        throw std::invalid_argument("wrong_set: dimensions do not form a product shape");
    if (c.rows() != c.cols()) throw std::invalid_argument("wrong_set: C must be square");
    DomainMatrix d = mat_sub(mat_mul(a, b), c);
    std::vector<Cell> cells;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (d.at(i, j) != 0) cells.emplace_back(i + 1, j + 1);
    return wrong_set_from_cells(c.rows(), std::move(cells));
}

WrongPattern WrongPattern::parse(const std::string& text) {
    WrongPattern p;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "none") {
        p.kind = Kind::none;
    } else if (head == "single") {
        p.kind = Kind::single;
    } else if (head == "row") {
        p.kind = Kind::row;
    } else if (head == "independent") {
        p.kind = Kind::independent;
        p.t = std::stoi(args);
    } else if (head == "random") {
        p.kind = Kind::random_cells;
        p.t = std::stoi(args);
    } else if (head == "rectangle") {
        auto comma = args.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("rectangle pattern needs a,b");
        p.kind = Kind::rectangle;
        p.a = std::stoi(args.substr(0, comma));
        p.b = std::stoi(args.substr(comma + 1));
    } else {
        throw std::invalid_argument("unknown wrong pattern '" + text + "'");
    }
    return p;
}

std::string WrongPattern::str() const {
    switch (kind) {
        case Kind::none: return "none";
        case Kind::single: return "single";
        case Kind::row: return "row";
        case Kind::independent: return "independent:" + std::to_string(t);
        case Kind::random_cells: return "random:" + std::to_string(t);
        case Kind::rectangle: return "rectangle:" + std::to_string(a) + "," + std::to_string(b);
    }
    return "?";
}

std::vector<Cell> make_pattern_cells(int n, const WrongPattern& pattern, Rng& rng) {
    using Kind = WrongPattern::Kind;
    std::vector<Cell> cells;
    switch (pattern.kind) {
        case Kind::none:
            break;
        case Kind::single:
            cells.emplace_back(static_cast<int>(rng.uniform_u64(n)) + 1,
                               static_cast<int>(rng.uniform_u64(n)) + 1);
            break;
        case Kind::row: {
            int r = static_cast<int>(rng.uniform_u64(n)) + 1;
            for (int c = 1; c <= n; ++c) cells.emplace_back(r, c);
            break;
        }
        case Kind::independent: {
            if (pattern.t > n) throw std::invalid_argument("independent pattern: t > n");
            auto rows = random_subset(n, pattern.t, rng);
            auto cols = random_subset(n, pattern.t, rng);
            // random bijection rows -> cols
            for (int i = pattern.t - 1; i > 0; --i)
                std::swap(cols[i], cols[rng.uniform_u64(static_cast<uint64_t>(i) + 1)]);
            for (int i = 0; i < pattern.t; ++i) cells.emplace_back(rows[i], cols[i]);
            break;
        }
        case Kind::random_cells: {
            if (static_cast<int64_t>(pattern.t) > static_cast<int64_t>(n) * n)
                throw std::invalid_argument("random pattern: t > n^2");
            auto flat = random_subset(n * n, pattern.t, rng);
            for (int f : flat) cells.emplace_back((f - 1) / n + 1, (f - 1) % n + 1);
            break;
        }
        case Kind::rectangle: {
            if (pattern.a > n || pattern.b > n) throw std::invalid_argument("rectangle pattern: a or b > n");
            auto rows = random_subset(n, pattern.a, rng);
            auto cols = random_subset(n, pattern.b, rng);
            for (int r : rows)
                for (int c : cols) cells.emplace_back(r, c);
            break;
        }
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

Instance generate_instance(int n, int m, const WrongPattern& pattern, const DomainSpec& domain,
                           uint64_t seed) {
    Rng rng(seed);
    Instance inst;
    inst.a = DomainMatrix::random(n, m, domain, rng);
    inst.b = DomainMatrix::random(m, n, domain, rng);
    inst.c = mat_mul(inst.a, inst.b);
    auto cells = make_pattern_cells(n, pattern, rng);
    for (const auto& [r, c] : cells)
        inst.c.at(r - 1, c - 1) = dom_add(inst.c.at(r - 1, c - 1), dom_random_nonzero(domain, rng), domain);
    inst.w = wrong_set_from_cells(n, cells);
    return inst;
}

ProductInstance generate_product_instance(int n, int m, const WrongPattern& pattern,
                                          const DomainSpec& domain, uint64_t seed) {
    Rng rng(seed);
    auto cells = make_pattern_cells(n, pattern, rng);
    // A carries the target product in its first min(n,m) columns, B embeds the
    // matching partial identity, so AB has exactly the requested support.
    if (m < 1) throw std::invalid_argument("generate_product_instance: m < 1");
    DomainMatrix target(n, n, domain);
    for (const auto& [r, c] : cells) target.at(r - 1, c - 1) = dom_random_nonzero(domain, rng);
    if (m >= n) {
        ProductInstance inst{DomainMatrix(n, m, domain), DomainMatrix(m, n, domain), {}};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) inst.a.at(i, j) = target.at(i, j);
        for (int i = 0; i < n; ++i) inst.b.at(i, i) = 1;
        inst.product_support = wrong_set_from_cells(n, cells);
        return inst;
    }
    // m < n: route each used column through a shared inner index; only
    // patterns touching <= m distinct columns are representable.
    std::vector<int> col_of(m, 0);
    std::vector<int> slot(n + 1, -1);
    int used = 0;
    for (const auto& cell : cells) {
        int c = cell.second;
        if (slot[c] == -1) {
            if (used == m) throw std::invalid_argument("pattern needs more distinct columns than m");
            slot[c] = used;
            col_of[used] = c;
            ++used;
        }
    }
    ProductInstance inst{DomainMatrix(n, m, domain), DomainMatrix(m, n, domain), {}};
    for (const auto& [r, c] : cells) inst.a.at(r - 1, slot[c]) = target.at(r - 1, c - 1);
    for (int s = 0; s < used; ++s) inst.b.at(s, col_of[s] - 1) = 1;
    inst.product_support = wrong_set_from_cells(n, cells);
    return inst;
}

} // namespace qmv
