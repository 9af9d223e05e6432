#include "ncode/simplex.hpp"

#include <algorithm>

namespace ncode {

namespace {

// Exact determinant by Gaussian elimination with column pivoting.
Rational det(std::vector<std::vector<Rational>> m) {
    const std::size_t k = m.size();
    Rational result = 1;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && m[pivot][col] == 0)
            ++pivot;
        if (pivot == k)
            return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            result = -result;
        }
        result *= m[col][col];
        for (std::size_t row = col + 1; row < k; ++row) {
            if (m[row][col] == 0)
                continue;
            Rational factor = m[row][col] / m[col][col];
            for (std::size_t c = col; c < k; ++c)
                m[row][c] -= factor * m[col][c];
        }
    }
    return result;
}

std::vector<std::vector<Rational>> edge_matrix(const std::vector<Point>& pts) {
    std::vector<std::vector<Rational>> m;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> row(pts[i].size());
        for (std::size_t c = 0; c < pts[i].size(); ++c)
            row[c] = pts[i][c] - pts[0][c];
        m.push_back(std::move(row));
    }
    return m;
}

} // namespace

Simplex::Simplex(int d, std::vector<Point> vertices)
    : d_(d), vertices_(std::move(vertices)) {
    if (d_ < 1)
        throw Error(Errc::BadParameters, "dimension must be >= 1");
    if (vertices_.size() != static_cast<std::size_t>(d_) + 1)
        throw Error(Errc::BadParameters,
                    "a " + std::to_string(d_) + "-simplex needs " +
                        std::to_string(d_ + 1) + " vertices, got " +
                        std::to_string(vertices_.size()));
    for (const auto& p : vertices_)
        if (p.size() != static_cast<std::size_t>(d_))
            throw Error(Errc::BadParameters,
                        "vertex has " + std::to_string(p.size()) +
                            " coordinates, expected " + std::to_string(d_));
    if (det(edge_matrix(vertices_)) == 0)
        throw Error(Errc::DegenerateSimplex,
                    "vertices are affinely dependent");
}

bool Simplex::same_vertices(const Simplex& other) const {
    if (d_ != other.d_)
        return false;
    auto a = vertices_;
    auto b = other.vertices_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

OrientedHyperplane OrientedHyperplane::canonical(std::vector<Rational> a,
                                                 Rational b) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    using boost::multiprecision::numerator;

    BigInt mult = denominator(b);
    for (const auto& x : a)
        mult = lcm(mult, denominator(x));

    std::vector<BigInt> normal(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        normal[i] = numerator(a[i]) * (mult / denominator(a[i]));
    BigInt offset = numerator(b) * (mult / denominator(b));

    BigInt g = 0;
    for (const auto& x : normal)
        g = gcd(g, x);
    g = gcd(g, offset);
    if (g == 0)
        throw Error(Errc::BadParameters, "zero normal vector");
    for (auto& x : normal)
        x /= g;
    offset /= g;

    for (const auto& x : normal) {
        if (x == 0)
            continue;
        if (x < 0) {
            for (auto& y : normal)
                y = -y;
            offset = -offset;
        }
        break;
    }
    OrientedHyperplane h;
    h.normal = std::move(normal);
    h.offset = std::move(offset);
    return h;
}

int OrientedHyperplane::side_of(const Point& x) const {
    Rational value = -Rational(offset);
    for (std::size_t i = 0; i < normal.size(); ++i)
        value += Rational(normal[i]) * x[i];
    if (value > 0)
        return 1;
    if (value < 0)
        return -1;
    return 0;
}

std::string OrientedHyperplane::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < normal.size(); ++i) {
        if (i)
            out += ',';
        out += normal[i].str();
    }
    out += " | ";
    out += offset.str();
    out += ")";
    return out;
}

namespace {

Rational parse_rational(std::string_view tok, std::size_t line) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty())
            throw ParseError(Errc::ParseFailure,
                             "line " + std::to_string(line) +
                                 ": bad rational '" + std::string(tok) + "'",
                             line);
        bool neg = false;
        std::size_t k = 0;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            k = 1;
        }
        if (k == s.size())
            throw ParseError(Errc::ParseFailure,
                             "line " + std::to_string(line) +
                                 ": bad rational '" + std::string(tok) + "'",
                             line);
        BigInt v = 0;
        for (; k < s.size(); ++k) {
            if (s[k] < '0' || s[k] > '9')
                throw ParseError(Errc::ParseFailure,
                                 "line " + std::to_string(line) +
                                     ": bad rational '" + std::string(tok) +
                                     "'",
                                 line);
            v = v * 10 + (s[k] - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    std::size_t slash = tok.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(tok));
    BigInt num = parse_int(tok.substr(0, slash));
    BigInt den = parse_int(tok.substr(slash + 1));
    if (den == 0)
        throw ParseError(Errc::ParseFailure,
                         "line " + std::to_string(line) + ": zero denominator",
                         line);
    return Rational(num, den);
}

struct Line {
    std::string text;
    std::size_t number;
};

std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                 line.back() == '\r'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (!line.empty())
            out.push_back({std::string(line), line_no});
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t k = 0;
    while (k < s.size()) {
        while (k < s.size() && (s[k] == ' ' || s[k] == '\t'))
            ++k;
        std::size_t start = k;
        while (k < s.size() && s[k] != ' ' && s[k] != '\t')
            ++k;
        if (k > start)
            out.push_back(s.substr(start, k - start));
    }
    return out;
}

} // namespace

SimplexFamily parse_simplices(std::string_view text) {
    auto lines = significant_lines(text);
    if (lines.empty())
        throw ParseError(Errc::ParseFailure, "empty simplex file");
    const auto& header = lines.front();
    if (header.text.substr(0, 2) != "d=")
        throw ParseError(Errc::ParseFailure,
                         "line " + std::to_string(header.number) +
                             ": expected header 'd=<dim>'",
                         header.number);
    int d = 0;
    for (std::size_t k = 2; k < header.text.size(); ++k) {
        char c = header.text[k];
        if (c < '0' || c > '9')
            throw ParseError(Errc::ParseFailure,
                             "line " + std::to_string(header.number) +
                                 ": bad dimension in header",
                             header.number);
        d = d * 10 + (c - '0');
        if (d > 16)
            throw ParseError(Errc::ParseFailure,
                             "line " + std::to_string(header.number) +
                                 ": dimension too large",
                             header.number);
    }
    if (header.text.size() == 2 || d < 1)
        throw ParseError(Errc::ParseFailure,
                         "line " + std::to_string(header.number) +
                             ": bad dimension in header",
                         header.number);

    std::size_t rows = lines.size() - 1;
    std::size_t per = static_cast<std::size_t>(d) + 1;
    if (rows == 0 || rows % per != 0)
        throw ParseError(Errc::ParseFailure,
                         std::to_string(rows) + " vertex lines do not form " +
                             std::to_string(d) + "-simplices of " +
                             std::to_string(per) + " vertices each");

    SimplexFamily family;
    for (std::size_t s = 0; s < rows / per; ++s) {
        std::vector<Point> vertices;
        for (std::size_t k = 0; k < per; ++k) {
            const auto& line = lines[1 + s * per + k];
            auto toks = split_ws(line.text);
            if (toks.size() != static_cast<std::size_t>(d))
                throw ParseError(Errc::ParseFailure,
                                 "line " + std::to_string(line.number) +
                                     ": expected " + std::to_string(d) +
                                     " coordinates, got " +
                                     std::to_string(toks.size()),
                                 line.number);
            Point p;
            p.reserve(toks.size());
            for (auto t : toks)
                p.push_back(parse_rational(t, line.number));
            vertices.push_back(std::move(p));
        }
        try {
            family.emplace_back(d, std::move(vertices));
        } catch (const Error& e) {
            if (e.code() == Errc::DegenerateSimplex)
                throw Error(Errc::DegenerateSimplex,
                            "simplex " + std::to_string(s + 1) +
                                " is degenerate");
            throw;
        }
    }
    return family;
}

std::vector<OrientedHyperplane> facet_hyperplanes(const Simplex& s) {
    const int d = s.dim();
    std::vector<OrientedHyperplane> out;
    out.reserve(static_cast<std::size_t>(d) + 1);
    for (std::size_t opposite = 0; opposite <= static_cast<std::size_t>(d);
         ++opposite) {
        std::vector<Point> facet;
        for (std::size_t k = 0; k <= static_cast<std::size_t>(d); ++k)
            if (k != opposite)
                facet.push_back(s.vertex(k));
        // Generalized cross product of the facet's edge vectors by cofactor
        // expansion: a_j = (-1)^(j+1) det(E without column j).
        auto edges = edge_matrix(facet); // (d-1) x d
        std::vector<Rational> a(static_cast<std::size_t>(d));
        for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
            std::vector<std::vector<Rational>> minor;
            for (const auto& row : edges) {
                std::vector<Rational> r;
                for (std::size_t c = 0; c < row.size(); ++c)
                    if (c != j)
                        r.push_back(row[c]);
                minor.push_back(std::move(r));
            }
            Rational m = det(std::move(minor));
            a[j] = (j % 2 == 0) ? m : -m;
        }
        Rational b = 0;
        for (std::size_t j = 0; j < a.size(); ++j)
            b += a[j] * facet[0][j];
        out.push_back(OrientedHyperplane::canonical(std::move(a), std::move(b)));
    }
    return out;
}

BuiltCode build_code(const SimplexFamily& family) {
    if (family.empty())
        throw Error(Errc::BadParameters, "empty simplex family");
    const int d = family[0].dim();
    for (std::size_t k = 1; k < family.size(); ++k)
        if (family[k].dim() != d)
            throw Error(Errc::WrongDimension,
                        "simplex " + std::to_string(k + 1) + " has dimension " +
                            std::to_string(family[k].dim()) + ", expected " +
                            std::to_string(d));
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b)
            if (family[a].same_vertices(family[b]))
                throw Error(Errc::DuplicateSimplex,
                            "simplices " + std::to_string(a + 1) + " and " +
                                std::to_string(b + 1) + " coincide");

    std::vector<OrientedHyperplane> planes;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> facet_index;
    // facet_index[s] = (hyperplane index, opposite vertex) per facet.
    for (const auto& simplex : family) {
        auto own = facet_hyperplanes(simplex);
        std::vector<std::pair<std::size_t, std::size_t>> entry;
        for (std::size_t k = 0; k < own.size(); ++k) {
            auto it = std::find(planes.begin(), planes.end(), own[k]);
            std::size_t idx;
            if (it == planes.end()) {
                idx = planes.size();
                planes.push_back(own[k]);
            } else {
                idx = static_cast<std::size_t>(it - planes.begin());
            }
            entry.emplace_back(idx, k);
        }
        facet_index.push_back(std::move(entry));
    }

    const int n = static_cast<int>(planes.size());
    std::vector<Word> words;
    for (std::size_t s = 0; s < family.size(); ++s) {
        std::vector<Letter> letters(static_cast<std::size_t>(n), Letter::Star);
        for (auto [idx, opposite] : facet_index[s]) {
            int side = planes[idx].side_of(family[s].vertex(opposite));
            letters[idx] = side > 0 ? Letter::One : Letter::Zero;
        }
        words.emplace_back(std::move(letters));
    }
    return {Code(n, std::move(words)), std::move(planes)};
}

namespace {

// Closed-half-plane clip: keeps points with keep_sign * (<a,p> - b) >= 0.
std::vector<Point> clip(const std::vector<Point>& poly,
                        const OrientedHyperplane& h, int keep_sign) {
    auto value = [&](const Point& p) {
        Rational v = -Rational(h.offset);
        for (std::size_t i = 0; i < h.normal.size(); ++i)
            v += Rational(h.normal[i]) * p[i];
        return keep_sign > 0 ? v : Rational(-v);
    };
    std::vector<Point> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        Rational vp = value(p), vq = value(q);
        if (vp >= 0)
            out.push_back(p);
        if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0)) {
            Rational t = vp / (vp - vq);
            Point x(p.size());
            for (std::size_t c = 0; c < p.size(); ++c)
                x[c] = p[c] + t * (q[c] - p[c]);
            out.push_back(std::move(x));
        }
    }
    return out;
}

} // namespace

bool neighborly_pair_2d(const Simplex& s1, const Simplex& s2) {
    if (s1.dim() != 2 || s2.dim() != 2)
        throw Error(Errc::WrongDimension,
                    "neighborly_pair_2d needs two 2-simplices");
    std::vector<Point> poly = s1.vertices();
    auto planes = facet_hyperplanes(s2);
    for (std::size_t k = 0; k < planes.size(); ++k) {
        int keep = planes[k].side_of(s2.vertex(k));
        poly = clip(poly, planes[k], keep);
        if (poly.empty())
            return false;
    }
    std::sort(poly.begin(), poly.end());
    poly.erase(std::unique(poly.begin(), poly.end()), poly.end());
    if (poly.size() < 2)
        return false;
    // Affine dimension: 1 iff all points are collinear.
    const Point& p0 = poly[0];
    const Point& p1 = poly[1];
    Rational ux = p1[0] - p0[0], uy = p1[1] - p0[1];
    for (std::size_t k = 2; k < poly.size(); ++k) {
        Rational vx = poly[k][0] - p0[0], vy = poly[k][1] - p0[1];
        if (ux * vy - uy * vx != 0)
            return false;
    }
    return true;
}

} // namespace ncode
