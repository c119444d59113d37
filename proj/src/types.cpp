#include "twaf/types.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace twaf {

bool TwistedType::reduced() const {
    for (size_t i = 0; i < datum->size(); ++i)
        if (datum->info(int(i)).cls != RootClass::NdNm) return false;
    return true;
}

namespace {

struct ParsedName {
    char letter;
    int rank;
    int twist;       // 1, 2 or 3
    int ros_copies;  // 0 unless a restriction-of-scalars name
    std::string canonical;
};

ParsedName parse_name(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(char(toupper(static_cast<unsigned char>(c))));
    ParsedName p{};
    if (s.size() < 2 || s[0] < 'A' || s[0] > 'G') throw std::invalid_argument("unknown type '" + raw + "'");
    p.letter = s[0];
    size_t i = 1;
    std::string digits;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    if (digits.empty()) throw std::invalid_argument("unknown type '" + raw + "': missing rank");
    p.rank = std::stoi(digits);
    if (i == s.size()) {
        p.twist = 1;
    } else if (s[i] == '~' && i + 1 < s.size()) {
        p.twist = std::stoi(s.substr(i + 1));
    } else if (s[i] == '^') {
        // accept Xn^(r)
        std::string rest = s.substr(i + 1);
        if (rest.size() >= 3 && rest.front() == '(' && rest.back() == ')')
            p.twist = std::stoi(rest.substr(1, rest.size() - 2));
        else
            throw std::invalid_argument("unknown type '" + raw + "'");
    } else if (s[i] == 'X' && i + 1 < s.size()) {
        p.ros_copies = std::stoi(s.substr(i + 1));
        p.twist = p.ros_copies;
    } else {
        throw std::invalid_argument("unknown type '" + raw + "'");
    }
    std::ostringstream os;
    if (p.ros_copies) {
        os << p.letter << p.rank << "x" << p.ros_copies;
    } else {
        os << p.letter << p.rank << "~" << p.twist;
    }
    p.canonical = os.str();
    return p;
}

DiagramAutomorphism flip_auto(int n) {
    DiagramAutomorphism s;
    s.perm.resize(n);
    for (int i = 0; i < n; ++i) s.perm[i] = n - 1 - i;
    return s;
}

DiagramAutomorphism d_swap_auto(int n) {
    DiagramAutomorphism s = trivial_automorphism(n);
    std::swap(s.perm[n - 1], s.perm[n - 2]);
    return s;
}

DiagramAutomorphism e6_involution() {
    DiagramAutomorphism s;
    s.perm = {5, 1, 4, 3, 2, 0};
    return s;
}

DiagramAutomorphism d4_triality() {
    DiagramAutomorphism s;
    s.perm = {2, 1, 3, 0};
    return s;
}

DiagramAutomorphism block_shift(int block, int copies) {
    DiagramAutomorphism s;
    s.perm.resize(block * copies);
    for (int c = 0; c < copies; ++c)
        for (int i = 0; i < block; ++i) s.perm[c * block + i] = ((c + 1) % copies) * block + i;
    return s;
}

DiagramAutomorphism block_swap12(int block, int copies) {
    DiagramAutomorphism s = trivial_automorphism(block * copies);
    for (int i = 0; i < block; ++i) std::swap(s.perm[1 * block + i], s.perm[2 * block + i]);
    return s;
}

std::unique_ptr<TwistedType> build_type(const ParsedName& p);

// factor lookup for restriction of scalars without touching the registry
// lock (build_type can run under it)
std::unique_ptr<TwistedType> build_factor(char letter, int rank) {
    return build_type(parse_name(std::string(1, letter) + std::to_string(rank) + "~1"));
}

std::unique_ptr<TwistedType> build_type(const ParsedName& p) {
    auto T = std::make_unique<TwistedType>();
    T->name = p.canonical;

    FiniteRootSystem abs;
    DiagramAutomorphism sigma, iota;
    int e = p.twist;

    if (p.ros_copies) {
        // the public catalogue lists A1 and A2; other letters are reachable
        // internally (very special isogeny duals in coefficient_ratios)
        if (p.ros_copies != 2 && p.ros_copies != 3)
            throw std::invalid_argument("restriction of scalars supported for 2 or 3 copies");
        std::unique_ptr<TwistedType> factor = build_factor(p.letter, p.rank);
        abs = product_system(factor->datum->absolute(), p.ros_copies);
        int block = factor->datum->absolute().rank();
        sigma = block_shift(block, p.ros_copies);
        iota = p.ros_copies == 3 ? block_swap12(block, p.ros_copies) : trivial_automorphism(abs.rank());
        T->chevalley = std::make_shared<ChevalleySystem>(
            LieAlgebra::product(factor->chevalley->algebra(), p.ros_copies));
    } else if (e == 1) {
        if (p.rank > 6) throw std::invalid_argument("catalogue stops at rank 6");
        switch (p.letter) {
            case 'A':
            case 'D':
            case 'E':
                abs = simple_system(p.letter, p.rank);
                sigma = iota = trivial_automorphism(abs.rank());
                break;
            case 'B':
            case 'C':
            case 'F':
            case 'G': {
                // unfold: B_n < D_{n+1}, C_n < A_{2n-1}, F4 < E6, G2 < D4
                FiniteRootSystem parent;
                DiagramAutomorphism fold_auto;
                if (p.letter == 'B') {
                    parent = simple_system('D', p.rank + 1);
                    fold_auto = d_swap_auto(p.rank + 1);
                } else if (p.letter == 'C') {
                    parent = simple_system('A', 2 * p.rank - 1);
                    fold_auto = flip_auto(2 * p.rank - 1);
                } else if (p.letter == 'F') {
                    if (p.rank != 4) throw std::invalid_argument("only F4 exists");
                    parent = simple_system('E', 6);
                    fold_auto = e6_involution();
                } else {
                    if (p.rank != 2) throw std::invalid_argument("only G2 exists");
                    parent = simple_system('D', 4);
                    fold_auto = d4_triality();
                }
                ChevalleySystem parent_cs(LieAlgebra::simply_laced(parent));
                SteinbergSigns signs = steinberg_normalize(parent_cs, fold_auto);
                abs = folded_system(parent, fold_auto);
                abs.name = p.canonical.substr(0, p.canonical.find('~'));
                LieAlgebra folded = LieAlgebra::fold(parent_cs.algebra(), fold_auto, signs.eps, abs);
                sigma = iota = trivial_automorphism(abs.rank());
                T->chevalley = std::make_shared<ChevalleySystem>(std::move(folded));
                break;
            }
            default:
                throw std::invalid_argument("unknown untwisted type");
        }
    } else {
        if (p.rank > 6) throw std::invalid_argument("catalogue stops at rank 6");
        if (e == 2 && p.letter == 'A' && p.rank >= 2) {
            abs = simple_system('A', p.rank);
            sigma = flip_auto(p.rank);
        } else if (e == 2 && p.letter == 'D' && p.rank >= 4) {
            abs = simple_system('D', p.rank);
            sigma = d_swap_auto(p.rank);
        } else if (e == 2 && p.letter == 'E' && p.rank == 6) {
            abs = simple_system('E', 6);
            sigma = e6_involution();
        } else if (e == 3 && p.letter == 'D' && p.rank == 4) {
            abs = simple_system('D', 4);
            sigma = d4_triality();
        } else {
            throw std::invalid_argument("unsupported twisted type '" + p.canonical + "'");
        }
        if (iota.perm.empty()) iota = trivial_automorphism(abs.rank());
        if (e == 3 && !p.ros_copies) {
            // involution inverting the triality: swap the two outer nodes 2, 3
            iota = trivial_automorphism(4);
            std::swap(iota.perm[2], iota.perm[3]);
        }
    }
    if (iota.perm.empty()) iota = trivial_automorphism(abs.rank());

    if (!T->chevalley) T->chevalley = std::make_shared<ChevalleySystem>(LieAlgebra::simply_laced(abs));

    std::vector<DiagramAutomorphism> gens = {sigma};
    if (!iota.is_trivial()) gens.push_back(iota);
    std::vector<SteinbergSigns> tables = steinberg_normalize(*T->chevalley, gens);
    T->sigma_signs = tables[0];
    T->iota_signs = tables.size() > 1 ? tables[1] : automorphism_signs(*T->chevalley, iota);

    T->datum = std::make_shared<RelativeRootDatum>(abs, sigma, iota, e);
    compute_level_sets(*T->datum, T->sigma_signs);
    return T;
}

std::map<std::string, std::unique_ptr<TwistedType>>& registry() {
    static std::map<std::string, std::unique_ptr<TwistedType>> reg;
    return reg;
}
std::mutex reg_mutex;

}  // namespace

const TwistedType& get_type(const std::string& name) {
    ParsedName p = parse_name(name);
    std::lock_guard<std::mutex> lock(reg_mutex);
    auto& reg = registry();
    auto it = reg.find(p.canonical);
    if (it == reg.end()) it = reg.emplace(p.canonical, build_type(p)).first;
    return *it->second;
}

std::vector<std::string> supported_type_names() {
    std::vector<std::string> names;
    for (int n = 1; n <= 6; ++n) names.push_back("A" + std::to_string(n) + "~1");
    for (int n = 2; n <= 6; ++n) names.push_back("B" + std::to_string(n) + "~1");
    for (int n = 2; n <= 6; ++n) names.push_back("C" + std::to_string(n) + "~1");
    for (int n = 4; n <= 6; ++n) names.push_back("D" + std::to_string(n) + "~1");
    names.push_back("E6~1");
    names.push_back("F4~1");
    names.push_back("G2~1");
    for (int n = 2; n <= 6; ++n) names.push_back("A" + std::to_string(n) + "~2");
    for (int n = 4; n <= 6; ++n) names.push_back("D" + std::to_string(n) + "~2");
    names.push_back("E6~2");
    names.push_back("D4~3");
    names.push_back("A1x2");
    names.push_back("A1x3");
    names.push_back("A2x2");
    names.push_back("A2x3");
    return names;
}

std::vector<int> tits_exponents_absolute(const TwistedType& T) {
    const RelativeRootDatum& datum = *T.datum;
    const FiniteRootSystem& rs = datum.absolute();
    // gamma = sum of the first-type liftings of the multipliable simple roots
    std::vector<int> gamma_support;
    for (int i = 0; i < rs.rank(); ++i) {
        QVec a = datum.restrict_root(rs.simple(i));
        if (datum.classify(a) != RootClass::Multipliable) continue;
        const auto& lifts = datum.info(a).lifts;
        int first = *std::min_element(lifts.begin(), lifts.end(), [&](int x, int y) {
            return rs.roots[x] < rs.roots[y];
        });
        if (rs.roots[first] == rs.simple(i) || rs.height(rs.roots[first]) == 1) {
            // record the simple index of the chosen lift once per orbit
            for (int j = 0; j < rs.rank(); ++j)
                if (rs.roots[first] == rs.simple(j)) {
                    if (std::find(gamma_support.begin(), gamma_support.end(), j) == gamma_support.end())
                        gamma_support.push_back(j);
                }
        }
    }
    std::vector<int> exps(rs.roots.size(), 0);
    for (size_t r = 0; r < rs.roots.size(); ++r)
        for (int j : gamma_support) exps[r] += rs.roots[r][j];
    return exps;
}

int tits_exponent_relative(const TwistedType& T, const QVec& a) {
    if (T.reduced()) return 0;
    if (!T.datum->is_relative_root(a)) throw std::invalid_argument("not a relative root");
    return relative_root_positive(*T.datum, a) ? 1 : 0;
}

}  // namespace twaf
