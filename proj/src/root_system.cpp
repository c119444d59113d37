#include "twaf/root_system.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace twaf {

bool FiniteRootSystem::is_root(const IVec& v) const { return root_index(v) >= 0; }

int FiniteRootSystem::root_index(const IVec& v) const {
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i] == v) return int(i);
    return -1;
}

int DiagramAutomorphism::order() const {
    DiagramAutomorphism id = trivial_automorphism(int(perm.size()));
    DiagramAutomorphism p = *this;
    for (int k = 1; k <= 6; ++k) {
        if (p.perm == id.perm) return k;
        p = p.compose(*this);
    }
    throw std::logic_error("diagram automorphism of unexpected order");
}

DiagramAutomorphism trivial_automorphism(int rank) {
    DiagramAutomorphism s;
    s.perm.resize(rank);
    for (int i = 0; i < rank; ++i) s.perm[i] = i;
    return s;
}

bool preserves_cartan(const FiniteRootSystem& rs, const DiagramAutomorphism& s) {
    int n = rs.rank();
    if (int(s.perm.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rs.cartan[s.perm[i]][s.perm[j]] != rs.cartan[i][j]) return false;
    return true;
}

namespace {

std::vector<IVec> cartan_matrix(char letter, int n) {
    auto chain = [&](int len) {
        std::vector<IVec> a(len, IVec(len, 0));
        for (int i = 0; i < len; ++i) {
            a[i][i] = 2;
            if (i + 1 < len) a[i][i + 1] = a[i + 1][i] = -1;
        }
        return a;
    };
    switch (letter) {
        case 'A':
            // ranks above 6 only appear as unfolding parents of C_n
            if (n < 1 || n > 11) throw std::invalid_argument("A_n supported for 1 <= n <= 11");
            return chain(n);
        case 'B': {
            if (n < 2 || n > 6) throw std::invalid_argument("B_n supported for 2 <= n <= 6");
            auto a = chain(n);
            a[n - 1][n - 2] = -2;  // alpha_n short
            return a;
        }
        case 'C': {
            if (n < 2 || n > 6) throw std::invalid_argument("C_n supported for 2 <= n <= 6");
            auto a = chain(n);
            a[n - 2][n - 1] = -2;  // alpha_n long
            return a;
        }
        case 'D': {
            if (n < 3 || n > 7) throw std::invalid_argument("D_n supported for 3 <= n <= 7");
            auto a = chain(n);
            // detach node n and hang it off node n-2
            a[n - 1][n - 2] = a[n - 2][n - 1] = 0;
            a[n - 1][n - 3] = a[n - 3][n - 1] = -1;
            return a;
        }
        case 'E': {
            if (n != 6) throw std::invalid_argument("only E6 is in the catalogue");
            // Bourbaki: chain 1-3-4-5-6 with node 2 attached to 4
            std::vector<IVec> a(6, IVec(6, 0));
            for (int i = 0; i < 6; ++i) a[i][i] = 2;
            auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
            link(1, 3);
            link(3, 4);
            link(4, 5);
            link(5, 6);
            link(2, 4);
            return a;
        }
        case 'F': {
            if (n != 4) throw std::invalid_argument("only F4 exists");
            auto a = chain(4);
            a[2][1] = -2;  // alpha_3, alpha_4 short
            return a;
        }
        case 'G': {
            if (n != 2) throw std::invalid_argument("only G2 exists");
            return {{2, -1}, {-3, 2}};
        }
        default:
            throw std::invalid_argument(std::string("unknown type letter ") + letter);
    }
}

std::vector<Rat> symmetrizer_impl(const std::vector<IVec>& a) {
    int n = int(a.size());
    std::vector<Rat> d(n, 0);
    // propagate along the Dynkin graph, one component at a time
    for (int start = 0; start < n; ++start) {
        if (d[start] != 0) continue;
        d[start] = 1;
        std::vector<int> stack = {start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (i == j || a[i][j] == 0 || d[j] != 0) continue;
                d[j] = d[i] * Rat(a[i][j]) / Rat(a[j][i]);
                stack.push_back(j);
            }
        }
    }
    // clear denominators so short roots get integral length too
    Rat lcm = 1;
    for (auto& x : d)
        while (!is_integer(lcm * x)) lcm *= den(x);
    for (auto& x : d) x *= lcm;
    return d;
}

std::vector<IVec> generate_roots_impl(const FiniteRootSystem& rs) {
    std::set<IVec> all;
    std::vector<IVec> frontier;
    for (int i = 0; i < rs.rank(); ++i) {
        all.insert(rs.simple(i));
        frontier.push_back(rs.simple(i));
    }
    while (!frontier.empty()) {
        std::vector<IVec> next;
        for (const IVec& v : frontier)
            for (int i = 0; i < rs.rank(); ++i) {
                IVec w = rs.reflect(i, v);
                if (all.insert(w).second) next.push_back(w);
            }
        frontier = std::move(next);
    }
    std::vector<IVec> out(all.begin(), all.end());
    // sort by height then lexicographically: stable, positive roots first half
    std::sort(out.begin(), out.end(), [&](const IVec& x, const IVec& y) {
        int hx = rs.height(x), hy = rs.height(y);
        if (hx != hy) return hx < hy;
        return x < y;
    });
    return out;
}

}  // namespace

void finish_system(FiniteRootSystem& rs) {
    rs.d = symmetrizer_impl(rs.cartan);
    rs.roots = generate_roots_impl(rs);
}

FiniteRootSystem simple_system(char letter, int rank) {
    FiniteRootSystem rs;
    rs.name = std::string(1, letter) + std::to_string(rank);
    rs.cartan = cartan_matrix(letter, rank);
    finish_system(rs);
    return rs;
}

FiniteRootSystem product_system(const FiniteRootSystem& rs, int copies) {
    FiniteRootSystem p;
    p.name = rs.name + "x" + std::to_string(copies);
    int n = rs.rank(), N = n * copies;
    p.cartan.assign(N, IVec(N, 0));
    for (int c = 0; c < copies; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p.cartan[c * n + i][c * n + j] = rs.cartan[i][j];
    finish_system(p);
    return p;
}

}  // namespace twaf
