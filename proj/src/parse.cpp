#include "twodof/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace twodof {

ParseError::ParseError(const std::string& message, std::size_t position, std::size_t line)
    : std::invalid_argument(message), position_(position), line_(line) {}

namespace {

// Exponents beyond this are almost certainly typos and would only burn memory.
constexpr unsigned long kMaxExponent = 1000;

class ExpressionParser {
  public:
    explicit ExpressionParser(const std::string& text) : text_(text) {}

    RatFn parse() {
        skip_space();
        if (at_end()) fail("empty expression");
        RatFn value = expression();
        skip_space();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return value;
    }

  private:
    RatFn expression() {
        RatFn value = term();
        for (;;) {
            skip_space();
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    RatFn term() {
        RatFn value = factor();
        for (;;) {
            skip_space();
            if (accept('*')) {
                value *= factor();
            } else if (peek() == '/') {
                const std::size_t at = pos_++;
                const RatFn divisor = factor();
                if (divisor.is_zero()) fail("division by zero", at);
                value /= divisor;
            } else {
                return value;
            }
        }
    }

    RatFn factor() {
        skip_space();
        if (accept('-')) return -factor();
        RatFn value = base();
        skip_space();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer exponent");
            const mpz_class e = integer();
            if (e > kMaxExponent) fail("exponent too large (limit " + std::to_string(kMaxExponent) + ")", at);
            const unsigned k = static_cast<unsigned>(e.get_ui());
            value = RatFn(value.num().pow(k), value.den().pow(k));
        }
        return value;
    }

    RatFn base() {
        skip_space();
        const char c = peek();
        if (c == 's') {
            ++pos_;
            return RatFn(Poly::s());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const mpz_class z = integer();
            if (peek() == '.') fail("decimal literals are not allowed; write a fraction such as 1/4");
            return RatFn(Rational(z));
        }
        if (accept('(')) {
            RatFn value = expression();
            skip_space();
            if (!accept(')')) fail(at_end() ? "missing ')'" : std::string("expected ')' but found '") + peek() + "'");
            return value;
        }
        if (at_end()) fail("unexpected end of expression");
        fail(std::string("unexpected '") + c + "'");
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return mpz_class(text_.substr(start, pos_ - start), 10);
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        throw ParseError(what + " at position " + std::to_string(at + 1) + " in \"" + text_ + "\"", at);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Split on commas that are not inside parentheses.
std::vector<std::string> split_cells(const std::string& row) {
    std::vector<std::string> cells;
    int depth = 0;
    std::string cur;
    for (char c : row) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

const std::vector<std::string> kMatrixSections = {"plant", "target", "m",   "x",   "lambda", "d_t",
                                                  "cy",    "cr",     "r",   "cff", "cfb"};
const std::vector<std::string> kKeyValueSections = {"design", "config", "options"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

struct Grid {
    std::vector<std::vector<RatFn>> rows;
    std::size_t first_line = 0;
};

RatMat to_matrix(const std::string& name, const Grid& g) {
    if (g.rows.empty()) throw ParseError("section [" + name + "] is empty", ParseError::kNoPosition, g.first_line);
    RatMat out(g.rows.size(), g.rows[0].size());
    for (std::size_t i = 0; i < g.rows.size(); ++i)
        for (std::size_t j = 0; j < g.rows[i].size(); ++j) out(i, j) = g.rows[i][j];
    return out;
}

}  // namespace

RatFn parse_rational(const std::string& text) { return ExpressionParser(text).parse(); }

Rational parse_rational_number(const std::string& raw) {
    const std::string text = trim(raw);
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        // Exact decimal: "-0.125" -> -125/1000.
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t places = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+" ||
            digits.find_first_not_of("0123456789", digits[0] == '-' || digits[0] == '+' ? 1 : 0) != std::string::npos)
            throw ParseError("not a number: \"" + raw + "\"");
        if (digits[0] == '+') digits.erase(0, 1);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
        Rational q(mpz_class(digits, 10), den);
        q.canonicalize();
        return q;
    }
    RatFn f;
    try {
        f = parse_rational(text);
    } catch (const ParseError&) {
        throw ParseError("not a number: \"" + raw + "\"");
    }
    if (!f.is_constant()) throw ParseError("not a number: \"" + raw + "\"");
    return f.constant_value();
}

DesignProblem::Kind parse_problem_kind(const std::string& text) {
    using K = DesignProblem::Kind;
    const std::string t = lower(trim(text));
    for (K k : {K::kModelMatching, K::kDiagonalDecoupling, K::kInverse, K::kStaticDecoupling,
                K::kDenominatorAssignment})
        if (to_string(k) == t) return k;
    throw ParseError("unknown problem \"" + text +
                     "\" (expected match, decouple, invert, static-decouple or assign-denominator)");
}

ClosedLoopConfig::Kind parse_config_kind(const std::string& text) {
    using K = ClosedLoopConfig::Kind;
    const std::string t = lower(trim(text));
    for (K k : {K::kTwoDof, K::kFfFbR, K::kUnityFeedback, K::kFeedbackDirectR})
        if (to_string(k) == t) return k;
    throw ParseError("unknown configuration \"" + text + "\" (expected two-dof, ff-fb-r, unity or feedback-direct-r)");
}

FeedbackSign parse_sign(const std::string& text) {
    const std::string t = lower(trim(text));
    if (t == "pos" || t == "positive" || t == "+") return FeedbackSign::kPositive;
    if (t == "neg" || t == "negative" || t == "-") return FeedbackSign::kNegative;
    throw ParseError("unknown feedback sign \"" + text + "\" (expected pos or neg)");
}

const RatMat* ProblemFile::matrix(const std::string& name) const {
    const auto it = matrices.find(name);
    return it == matrices.end() ? nullptr : &it->second;
}

DesignProblem ProblemFile::design() const {
    if (!problem) throw ParseError("no problem given (add 'problem = ...' to the [design] section)");
    DesignProblem d;
    d.kind = *problem;
    const auto need = [&](const char* name) -> const RatMat& {
        const RatMat* m = matrix(name);
        if (!m)
            throw ParseError(std::string("problem '") + to_string(d.kind) + "' needs a [" + name + "] section");
        return *m;
    };
    switch (d.kind) {
        case DesignProblem::Kind::kModelMatching:
            d.t = need("target");
            if (const RatMat* m = matrix("m")) d.m = *m;
            break;
        case DesignProblem::Kind::kDiagonalDecoupling:
            if (!targets.empty()) {
                d.targets = targets;
            } else if (const RatMat* t = matrix("target")) {
                for (std::size_t i = 0; i < std::min(t->rows(), t->cols()); ++i) d.targets.push_back((*t)(i, i));
            } else {
                throw ParseError("problem 'decouple' needs 'targets = ...' in [design] or a [target] section");
            }
            break;
        case DesignProblem::Kind::kInverse:
            break;
        case DesignProblem::Kind::kStaticDecoupling: {
            const RatMat* l = matrix("lambda");
            if (!l) {
                d.lambda = QMatrix::identity(plant.cols());
                break;
            }
            d.lambda = QMatrix(l->rows(), l->cols());
            for (std::size_t i = 0; i < l->rows(); ++i)
                for (std::size_t j = 0; j < l->cols(); ++j) {
                    if (!(*l)(i, j).is_constant()) throw ParseError("[lambda] entries must be constants");
                    d.lambda(i, j) = (*l)(i, j).constant_value();
                }
            break;
        }
        case DesignProblem::Kind::kDenominatorAssignment: {
            const RatMat& dt = need("d_t");
            try {
                d.d_t = to_polymat(dt);
            } catch (const std::domain_error&) {
                throw ParseError("[d_t] entries must be polynomials");
            }
            break;
        }
    }
    return d;
}

ProblemFile parse_problem(std::istream& in) {
    ProblemFile pf;
    std::map<std::string, Grid> grids;
    std::string section;
    std::string raw;
    std::size_t line_no = 0;
    bool have_plant = false;

    const auto error = [&](const std::string& what) { return ParseError("line " + std::to_string(line_no) + ": " + what,
                                                                        ParseError::kNoPosition, line_no); };

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw error("malformed section header \"" + line + "\"");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!contains(kMatrixSections, section) && !contains(kKeyValueSections, section))
                throw error("unknown section [" + section + "]");
            if (contains(kMatrixSections, section)) {
                if (grids.count(section)) throw error("duplicate section [" + section + "]");
                grids[section].first_line = line_no;
            }
            continue;
        }
        if (section.empty()) throw error("content before the first section header");

        if (contains(kMatrixSections, section)) {
            Grid& g = grids[section];
            std::vector<RatFn> row;
            for (const std::string& cell : split_cells(line)) {
                try {
                    row.push_back(parse_rational(cell));
                } catch (const ParseError& e) {
                    throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position(), line_no);
                }
            }
            if (!g.rows.empty() && row.size() != g.rows[0].size())
                throw error("row has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(g.rows[0].size()) + " (grid must be rectangular)");
            g.rows.push_back(std::move(row));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw error("expected 'key = value' in [" + section + "]");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (section == "design" && key == "problem") {
                pf.problem = parse_problem_kind(value);
            } else if (section == "design" && key == "targets") {
                pf.targets.clear();
                for (const std::string& cell : split_cells(value)) pf.targets.push_back(parse_rational(cell));
            } else if (section == "config" && key == "type") {
                pf.config = parse_config_kind(value);
            } else if (section == "options" && key == "shift") {
                pf.shift = parse_rational_number(value);
            } else if (section == "options" && key == "horizon") {
                pf.horizon = parse_rational_number(value).get_d();
            } else if (section == "options" && key == "dt") {
                pf.dt = parse_rational_number(value).get_d();
            } else if (section == "options" && key == "sign") {
                pf.sign = parse_sign(value);
            } else {
                throw error("unknown key '" + key + "' in [" + section + "]");
            }
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position(), line_no);
        }
    }

    for (const auto& [name, grid] : grids) {
        RatMat m = to_matrix(name, grid);
        if (name == "plant") {
            pf.plant = std::move(m);
            have_plant = true;
        } else {
            pf.matrices.emplace(name, std::move(m));
        }
    }
    if (!have_plant) throw ParseError("missing [plant] section");
    return pf;
}

ProblemFile parse_problem_text(const std::string& text) {
    std::istringstream in(text);
    return parse_problem(in);
}

}  // namespace twodof
