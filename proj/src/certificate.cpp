#include "binstretch/certificate.hpp"

#include "binstretch/combinatorics.hpp"
#include "binstretch/feasibility.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace binstretch {

std::string_view to_string(VerifyCode code)
{
    switch (code) {
    case VerifyCode::ok:
        return "ok";
    case VerifyCode::bad_params:
        return "bad-params";
    case VerifyCode::malformed_node:
        return "malformed-node";
    case VerifyCode::bad_root:
        return "bad-root";
    case VerifyCode::inconsistent_child:
        return "inconsistent-child";
    case VerifyCode::missing_placement:
        return "missing-placement";
    case VerifyCode::invalid_extension:
        return "invalid-extension";
    case VerifyCode::leaf_below_target:
        return "leaf-below-target";
    }
    return "unknown";
}

TreeStats tree_stats(const ProofTree &tree)
{
    TreeStats st;
    st.value = std::numeric_limits<Load>::max();
    std::set<Load> items;
    std::function<void(const ProofNode &, int)> walk = [&](const ProofNode &n, int depth) {
        ++st.nodes;
        st.depth = std::max(st.depth, depth);
        if (n.is_leaf()) {
            ++st.leaves;
            st.value = std::min(st.value, n.loads.empty() ? 0 : *std::max_element(n.loads.begin(), n.loads.end()));
            return;
        }
        items.insert(n.item);
        for (const auto &c : n.children)
            walk(c, depth + 1);
    };
    walk(tree.root, 0);
    if (st.leaves == 0)
        st.value = 0;
    st.distinct_items = static_cast<int>(items.size());
    return st;
}

namespace {

using nlohmann::json;

constexpr long long max_value = std::numeric_limits<std::uint16_t>::max();

template <class T>
std::string loads_str(std::span<const T> loads)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < loads.size(); ++i)
        os << (i ? "," : "") << loads[i];
    os << ')';
    return os.str();
}

// Append-only array stored in fixed-size chunks, so growth never copies or over-allocates.
template <class T>
class ChunkedArray
{
public:
    static constexpr std::size_t chunk_bits = 20;
    static constexpr std::size_t chunk_size = std::size_t{1} << chunk_bits;

    std::size_t size() const { return size_; }
    T &operator[](std::size_t i) { return chunks_[i >> chunk_bits][i & (chunk_size - 1)]; }
    const T &operator[](std::size_t i) const { return chunks_[i >> chunk_bits][i & (chunk_size - 1)]; }

    void push_back(T v)
    {
        if ((size_ & (chunk_size - 1)) == 0)
            chunks_.emplace_back(new T[chunk_size]);
        (*this)[size_++] = v;
    }

    // Moves the last n elements to the start of a new chunk unless they already share one.
    // Returns their new first index.
    std::size_t keep_together(std::size_t n)
    {
        const std::size_t start = size_ - n;
        if (n == 0 || (start >> chunk_bits) == ((size_ - 1) >> chunk_bits))
            return start;
        if (n > chunk_size)
            throw std::runtime_error("too many loads in one node");
        auto fresh = std::unique_ptr<T[]>(new T[chunk_size]);
        for (std::size_t k = 0; k < n; ++k)
            fresh[k] = (*this)[start + k];
        chunks_.back() = std::move(fresh);
        size_ = ((size_ - 1) >> chunk_bits << chunk_bits) + n;
        return size_ - n;
    }

private:
    std::vector<std::unique_ptr<T[]>> chunks_;
    std::size_t size_ = 0;
};

// A proof tree as flat pre-order arrays. Node i owns the subtree [i, end[i]); its children
// are i + 1, end[i + 1], ... up to end[i].
struct CompactProof
{
    GameParams params;
    ChunkedArray<std::uint16_t> pool;
    ChunkedArray<std::uint32_t> first; // offset of node i's loads in pool
    ChunkedArray<std::uint32_t> count;
    ChunkedArray<std::uint16_t> item;
    ChunkedArray<std::uint32_t> end;
    // Values a ProofTree held outside [0, 65535]: lowest node index and message.
    std::optional<std::pair<std::uint32_t, std::string>> bad_load, bad_item;

    std::uint32_t size() const { return static_cast<std::uint32_t>(end.size()); }
    std::span<const std::uint16_t> loads(std::uint32_t i) const
    {
        return count[i] == 0 ? std::span<const std::uint16_t>() : std::span(&pool[first[i]], count[i]);
    }
    bool is_leaf(std::uint32_t i) const { return item[i] == 0 && end[i] == i + 1; }

    std::uint32_t add_node()
    {
        if (end.size() >= std::numeric_limits<std::uint32_t>::max())
            throw std::runtime_error("certificate has too many nodes");
        first.push_back(0);
        count.push_back(0);
        item.push_back(0);
        end.push_back(0);
        return size() - 1;
    }

    void add_load(std::uint32_t i, std::uint16_t v)
    {
        if (pool.size() >= std::numeric_limits<std::uint32_t>::max())
            throw std::runtime_error("certificate has too many loads");
        pool.push_back(v);
        ++count[i];
    }

    // Call after the last add_load of node i.
    void end_loads(std::uint32_t i) { first[i] = static_cast<std::uint32_t>(pool.keep_together(count[i])); }

    std::string path_of(std::uint32_t target) const
    {
        std::string path = "/root";
        std::uint32_t i = 0;
        while (i != target) {
            std::uint32_t c = i + 1;
            std::size_t k = 0;
            while (end[c] <= target) {
                c = end[c];
                ++k;
            }
            path += "/children/" + std::to_string(k);
            i = c;
        }
        return path;
    }
};

TreeStats stats_of(const CompactProof &t)
{
    TreeStats st;
    st.value = std::numeric_limits<Load>::max();
    std::vector<bool> items(static_cast<std::size_t>(max_value) + 1);
    std::vector<std::uint32_t> open; // ends of the ancestors of the current node
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        while (!open.empty() && open.back() <= i)
            open.pop_back();
        st.depth = std::max(st.depth, static_cast<int>(open.size()));
        ++st.nodes;
        if (t.is_leaf(i)) {
            ++st.leaves;
            const auto l = t.loads(i);
            st.value = std::min<Load>(st.value, l.empty() ? 0 : *std::max_element(l.begin(), l.end()));
        } else if (!items[t.item[i]]) {
            items[t.item[i]] = true;
            ++st.distinct_items;
        }
        open.push_back(t.end[i]);
    }
    if (st.leaves == 0)
        st.value = 0;
    return st;
}

void flatten_into(CompactProof &out, const ProofNode &n)
{
    const auto i = out.add_node();
    for (Load v : n.loads) {
        if ((v < 0 || v > max_value) && !out.bad_load)
            out.bad_load.emplace(i, v < 0 ? "negative load in " + loads_str<Load>(n.loads)
                                          : "load " + std::to_string(v) + " exceeds " + std::to_string(max_value));
        out.add_load(i, static_cast<std::uint16_t>(std::clamp<long long>(v, 0, max_value)));
    }
    out.end_loads(i);
    if ((n.item < 0 || n.item > max_value) && !out.bad_item)
        out.bad_item.emplace(i, n.item < 0 ? "internal node needs a positive item"
                                           : "item " + std::to_string(n.item) + " exceeds " +
                                                 std::to_string(max_value));
    out.item[i] = static_cast<std::uint16_t>(std::clamp<long long>(n.item, 0, max_value));
    for (const auto &c : n.children)
        flatten_into(out, c);
    out.end[i] = out.size();
}

CompactProof flatten(const ProofTree &tree)
{
    CompactProof out;
    out.params = tree.params;
    flatten_into(out, tree.root);
    return out;
}

ProofNode expand(const CompactProof &t, std::uint32_t i)
{
    ProofNode n;
    const auto l = t.loads(i);
    n.loads.assign(l.begin(), l.end());
    n.item = t.item[i];
    for (std::uint32_t c = i + 1; c < t.end[i]; c = t.end[c])
        n.children.push_back(expand(t, c));
    return n;
}

// One invariant per pass; each pass reports the first violation in pre-order.
class Verifier
{
public:
    Verifier(const GameParams &p, const CompactProof &t) : p_(p), t_(t), m_(static_cast<std::size_t>(p.m)) {}

    VerifyReport run()
    {
        if (auto r = shape_pass(); !r.passed())
            return r;
        const auto root = t_.loads(0);
        if (std::any_of(root.begin(), root.end(), [](std::uint16_t l) { return l != 0; }))
            return fail(VerifyCode::bad_root, 0, "root loads " + loads_str(root) + " are not all zero");
        if (auto r = leaf_pass(); !r.passed())
            return r;
        if (auto r = consistency_pass(); !r.passed())
            return r;
        if (auto r = coverage_pass(); !r.passed())
            return r;
        return extension_pass();
    }

private:
    VerifyReport fail(VerifyCode c, std::uint32_t node, std::string msg) const
    {
        return VerifyReport{c, t_.path_of(node), std::move(msg)};
    }

    VerifyReport shape_pass() const
    {
        for (std::uint32_t i = 0; i < t_.size(); ++i) {
            const auto l = t_.loads(i);
            if (l.size() != m_)
                return fail(VerifyCode::malformed_node, i,
                            "expected " + std::to_string(p_.m) + " loads, found " + std::to_string(l.size()));
            if (t_.bad_load && t_.bad_load->first == i)
                return fail(VerifyCode::malformed_node, i, t_.bad_load->second);
            if (!std::is_sorted(l.begin(), l.end(), std::greater<>{}))
                return fail(VerifyCode::malformed_node, i, "loads " + loads_str(l) + " are not non-increasing");
            if (t_.bad_item && t_.bad_item->first == i)
                return fail(VerifyCode::malformed_node, i, t_.bad_item->second);
            if (t_.item[i] == 0 && t_.end[i] != i + 1)
                return fail(VerifyCode::malformed_node, i, "internal node needs a positive item");
        }
        return {};
    }

    VerifyReport leaf_pass() const
    {
        for (std::uint32_t i = 0; i < t_.size(); ++i) {
            if (!t_.is_leaf(i))
                continue;
            const auto l = t_.loads(i);
            if (l.front() < p_.t)
                return fail(VerifyCode::leaf_below_target, i,
                            "leaf " + loads_str(l) + " has largest load " + std::to_string(l.front()) + " < " +
                                std::to_string(p_.t));
        }
        return {};
    }

    // Distinct outcomes of placing node i's item into each bin, m loads apiece.
    void outcomes(std::uint32_t i)
    {
        const auto l = t_.loads(i);
        out_.clear();
        for (std::size_t b = 0; b < m_; ++b) {
            if (b > 0 && l[b] == l[b - 1])
                continue;
            tmp_.assign(l.begin(), l.end());
            place_sorted(tmp_, static_cast<int>(b), t_.item[i]);
            out_.insert(out_.end(), tmp_.begin(), tmp_.end());
        }
    }

    bool is_outcome(std::span<const std::uint16_t> c) const
    {
        for (std::size_t k = 0; k < out_.size(); k += m_)
            if (std::equal(c.begin(), c.end(), out_.begin() + static_cast<std::ptrdiff_t>(k)))
                return true;
        return false;
    }

    VerifyReport consistency_pass()
    {
        std::uint32_t bad = t_.size(), parent = 0;
        for (std::uint32_t i = 0; i < t_.size() && i < bad; ++i) {
            if (t_.is_leaf(i))
                continue;
            outcomes(i);
            for (std::uint32_t c = i + 1; c < t_.end[i]; c = t_.end[c])
                if (!is_outcome(t_.loads(c))) {
                    if (c < bad) {
                        bad = c;
                        parent = i;
                    }
                    break;
                }
        }
        if (bad == t_.size())
            return {};
        return fail(VerifyCode::inconsistent_child, bad,
                    "loads " + loads_str(t_.loads(bad)) + " are not " + loads_str(t_.loads(parent)) + " plus item " +
                        std::to_string(t_.item[parent]) + " in one bin");
    }

    VerifyReport coverage_pass()
    {
        for (std::uint32_t i = 0; i < t_.size(); ++i) {
            if (t_.is_leaf(i))
                continue;
            outcomes(i);
            for (std::size_t k = 0; k < out_.size(); k += m_) {
                const auto want = std::span<const Load>(out_).subspan(k, m_);
                bool found = false;
                for (std::uint32_t c = i + 1; c < t_.end[i] && !found; c = t_.end[c]) {
                    const auto l = t_.loads(c);
                    found = std::equal(l.begin(), l.end(), want.begin());
                }
                if (!found)
                    return fail(VerifyCode::missing_placement, i,
                                "no child for placing item " + std::to_string(t_.item[i]) + " into " +
                                    loads_str(t_.loads(i)) + " giving " + loads_str(want));
            }
        }
        return {};
    }

    VerifyReport extension_pass()
    {
        const CountTable counts(p_);
        FrontExtender extender(counts);
        extender_ = &extender;
        fronts_.clear();
        fronts_.push_back(empty_front(p_));
        return extension_rec(0, 0);
    }

    VerifyReport extension_rec(std::uint32_t i, std::size_t depth)
    {
        if (t_.is_leaf(i))
            return {};
        const Load y = t_.item[i];
        const Load y_max = fronts_[depth].largest_extension();
        if (y > y_max)
            return fail(VerifyCode::invalid_extension, i,
                        "item " + std::to_string(y) + " does not fit; largest legal item is " + std::to_string(y_max));
        if (fronts_.size() <= depth + 1)
            fronts_.emplace_back();
        extender_->extend(fronts_[depth], y, fronts_[depth + 1]);
        for (std::uint32_t c = i + 1; c < t_.end[i]; c = t_.end[c])
            if (auto r = extension_rec(c, depth + 1); !r.passed())
                return r;
        return {};
    }

    GameParams p_;
    const CompactProof &t_;
    std::size_t m_;
    std::vector<Load> out_, tmp_;
    FrontExtender *extender_ = nullptr;
    std::vector<FeasibleFront> fronts_;
};

VerifyReport verify_compact(const CompactProof &t, const GameParams &params)
{
    GameParams p;
    try {
        p = GameParams::make(params.m, params.g, params.t);
    } catch (const std::invalid_argument &e) {
        return VerifyReport{VerifyCode::bad_params, "", e.what()};
    }
    return Verifier(p, t).run();
}

// SAX handler that builds a CompactProof while checking the schema.
class Reader : public nlohmann::json_sax<json>
{
public:
    CompactProof proof;
    std::optional<ParseError> error;

    CompactProof finish(bool parsed)
    {
        if (error)
            throw *error;
        if (!parsed)
            throw ParseError("", "invalid JSON");
        if (!version_)
            throw ParseError("", "missing field \"format_version\"");
        if (*version_ != certificate_format_version)
            throw ParseError("/format_version", "unsupported format version " + std::to_string(*version_));
        const std::pair<const char *, const std::optional<int> *> header[] = {{"m", &m_}, {"g", &g_}, {"t", &t_}};
        for (const auto &[name, v] : header)
            if (!*v)
                throw ParseError("", std::string("missing field \"") + name + "\"");
        if (!has_root_)
            throw ParseError("", "missing field \"root\"");
        proof.params = GameParams{*m_, *g_, *t_};
        return std::move(proof);
    }

    bool null() override { return scalar(std::nullopt); }
    bool boolean(bool) override { return scalar(std::nullopt); }
    bool number_integer(number_integer_t v) override { return scalar(v); }
    bool number_unsigned(number_unsigned_t v) override
    {
        return scalar(static_cast<long long>(std::min<number_unsigned_t>(v, std::numeric_limits<long long>::max())));
    }
    bool number_float(number_float_t, const string_t &) override { return scalar(std::nullopt); }
    bool string(string_t &) override { return scalar(std::nullopt); }
    bool binary(binary_t &) override { return scalar(std::nullopt); }

    bool start_object(std::size_t) override
    {
        if (stack_.empty()) {
            stack_.push_back(Frame{Ctx::top});
            return true;
        }
        Frame &f = stack_.back();
        switch (f.ctx) {
        case Ctx::top:
            if (top_key_ == "root") {
                if (has_root_)
                    return fail("/root", "duplicate field");
                has_root_ = true;
                return open_node(0);
            }
            if (header_slot())
                return fail("/" + top_key_, "expected an integer");
            return skip();
        case Ctx::node:
            return fail(field_path(f), f.field == Field::item ? "expected an integer" : "expected an array");
        case Ctx::loads:
            return fail(node_path() + "/loads/" + std::to_string(f.seen), "expected an integer");
        case Ctx::children:
            return open_node(f.seen++);
        case Ctx::skip:
            ++f.seen;
            return true;
        }
        return false;
    }

    bool end_object() override
    {
        const Frame f = stack_.back();
        if (f.ctx == Ctx::node) {
            if (f.has_children && !f.has_item)
                return fail(node_path(), "node has children but no item");
            if (!f.has_loads)
                return fail(node_path(), "missing field \"loads\"");
            proof.end[f.node] = proof.size();
        } else if (f.ctx == Ctx::skip && --stack_.back().seen > 0) {
            return true;
        }
        stack_.pop_back();
        return true;
    }

    bool start_array(std::size_t) override
    {
        if (stack_.empty())
            return fail("", "certificate must be a JSON object");
        Frame &f = stack_.back();
        switch (f.ctx) {
        case Ctx::top:
            if (top_key_ == "root")
                return fail("/root", "expected a node object");
            if (header_slot())
                return fail("/" + top_key_, "expected an integer");
            return skip();
        case Ctx::node: {
            const auto node = f.node;
            if (f.field == Field::item)
                return fail(field_path(f), "expected an integer");
            stack_.push_back(Frame{f.field == Field::loads ? Ctx::loads : Ctx::children, node});
            return true;
        }
        case Ctx::loads:
            return fail(node_path() + "/loads/" + std::to_string(f.seen), "expected an integer");
        case Ctx::children:
            return fail(node_path() + "/children/" + std::to_string(f.seen), "expected a node object");
        case Ctx::skip:
            ++f.seen;
            return true;
        }
        return false;
    }

    bool end_array() override
    {
        Frame &f = stack_.back();
        if (f.ctx == Ctx::skip && --f.seen > 0)
            return true;
        if (f.ctx == Ctx::loads) {
            try {
                proof.end_loads(f.node);
            } catch (const std::runtime_error &e) {
                return fail(node_path() + "/loads", e.what());
            }
        }
        stack_.pop_back();
        return true;
    }

    bool key(string_t &k) override
    {
        Frame &f = stack_.back();
        if (f.ctx == Ctx::top) {
            top_key_ = k;
            return true;
        }
        if (f.ctx != Ctx::node)
            return true;
        bool *seen = nullptr;
        if (k == "loads") {
            f.field = Field::loads;
            seen = &f.has_loads;
        } else if (k == "item") {
            f.field = Field::item;
            seen = &f.has_item;
        } else if (k == "children") {
            f.field = Field::children;
            seen = &f.has_children;
        } else {
            return fail(node_path() + "/" + k, "unknown node field");
        }
        if (*seen)
            return fail(node_path() + "/" + k, "duplicate field");
        *seen = true;
        return true;
    }

    bool parse_error(std::size_t pos, const std::string &, const nlohmann::detail::exception &ex) override
    {
        return fail("byte " + std::to_string(pos), ex.what());
    }

private:
    enum class Ctx
    {
        top,
        node,
        loads,
        children,
        skip,
    };
    enum class Field
    {
        none,
        loads,
        item,
        children,
    };
    struct Frame
    {
        Ctx ctx;
        std::uint32_t node = 0;    // the node this frame belongs to
        std::uint32_t ordinal = 0; // node: position among its siblings
        std::uint32_t seen = 0;    // loads: values read; children: nodes opened; skip: nesting depth
        Field field = Field::none; // node: the field whose value comes next
        bool has_loads = false;
        bool has_item = false;
        bool has_children = false;
    };

    bool fail(std::string path, const std::string &what)
    {
        if (!error)
            error.emplace(std::move(path), what);
        return false;
    }

    std::string node_path() const
    {
        std::string p;
        for (const auto &f : stack_)
            if (f.ctx == Ctx::node)
                p += p.empty() ? "/root" : "/children/" + std::to_string(f.ordinal);
        return p;
    }

    std::string field_path(const Frame &f) const
    {
        return node_path() + (f.field == Field::item ? "/item" : f.field == Field::loads ? "/loads" : "/children");
    }

    std::optional<int> *header_slot()
    {
        if (top_key_ == "m")
            return &m_;
        if (top_key_ == "g")
            return &g_;
        if (top_key_ == "t")
            return &t_;
        if (top_key_ == "format_version")
            return &version_;
        return nullptr;
    }

    bool open_node(std::uint32_t ordinal)
    {
        try {
            const auto i = proof.add_node();
            stack_.push_back(Frame{Ctx::node, i, ordinal});
            return true;
        } catch (const std::runtime_error &e) {
            return fail(node_path(), e.what());
        }
    }

    bool skip()
    {
        stack_.push_back(Frame{Ctx::skip, 0, 0, 1});
        return true;
    }

    bool scalar(std::optional<long long> v)
    {
        if (stack_.empty())
            return fail("", "certificate must be a JSON object");
        Frame &f = stack_.back();
        switch (f.ctx) {
        case Ctx::top: {
            if (top_key_ == "root")
                return fail("/root", "expected a node object");
            auto *slot = header_slot();
            if (!slot)
                return true;
            if (!v)
                return fail("/" + top_key_, "expected an integer");
            if (*v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max())
                return fail("/" + top_key_, "integer out of range");
            *slot = static_cast<int>(*v);
            return true;
        }
        case Ctx::node:
            if (f.field != Field::item)
                return fail(field_path(f), "expected an array");
            if (!v)
                return fail(field_path(f), "expected an integer");
            if (*v < 0 || *v > max_value)
                return fail(field_path(f), "item out of range [0, " + std::to_string(max_value) + "]");
            proof.item[f.node] = static_cast<std::uint16_t>(*v);
            return true;
        case Ctx::loads: {
            const auto where = [&] { return node_path() + "/loads/" + std::to_string(f.seen); };
            if (!v)
                return fail(where(), "expected an integer");
            if (*v < 0 || *v > max_value)
                return fail(where(), "load out of range [0, " + std::to_string(max_value) + "]");
            try {
                proof.add_load(f.node, static_cast<std::uint16_t>(*v));
            } catch (const std::runtime_error &e) {
                return fail(where(), e.what());
            }
            ++f.seen;
            return true;
        }
        case Ctx::children:
            return fail(node_path() + "/children/" + std::to_string(f.seen), "expected a node object");
        case Ctx::skip:
            return true;
        }
        return false;
    }

    std::vector<Frame> stack_;
    std::string top_key_;
    std::optional<int> m_, g_, t_, version_;
    bool has_root_ = false;
};

CompactProof parse_text(std::string_view text)
{
    Reader r;
    const bool ok = json::sax_parse(text.begin(), text.end(), &r);
    return r.finish(ok);
}

CompactProof parse_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    Reader r;
    const bool ok = json::sax_parse(in, &r);
    return r.finish(ok);
}

} // namespace

VerifyReport verify(const ProofTree &tree, const GameParams &params)
{
    return verify_compact(flatten(tree), params);
}

CertificateWriter::CertificateWriter(std::ostream &out, const GameParams &params) : out_(out)
{
    put("{\"m\":");
    put(params.m);
    put(",\"g\":");
    put(params.g);
    put(",\"t\":");
    put(params.t);
    put(",\"format_version\":");
    put(certificate_format_version);
    put(",\"root\":");
}

void CertificateWriter::separate()
{
    ++stats_.nodes;
    stats_.depth = std::max(stats_.depth, static_cast<int>(empty_.size()));
    if (empty_.empty())
        return;
    if (!empty_.back())
        put(",");
    empty_.back() = false;
}

void CertificateWriter::put(std::string_view s)
{
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void CertificateWriter::put(long long v)
{
    char buf[24];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    out_.write(buf, r.ptr - buf);
}

void CertificateWriter::put_loads(std::span<const Load> loads)
{
    put("{\"loads\":[");
    for (std::size_t i = 0; i < loads.size(); ++i) {
        if (i)
            put(",");
        put(loads[i]);
    }
    put("]");
}

void CertificateWriter::begin_node(std::span<const Load> loads, Load item)
{
    separate();
    put_loads(loads);
    put(",\"item\":");
    put(item);
    put(",\"children\":[");
    empty_.push_back(true);
    const auto i = static_cast<std::size_t>(std::max(item, 0));
    if (items_.size() <= i)
        items_.resize(i + 1);
    if (!items_[i]) {
        items_[i] = true;
        ++stats_.distinct_items;
    }
}

void CertificateWriter::end_node()
{
    put("]}");
    empty_.pop_back();
}

void CertificateWriter::leaf(std::span<const Load> loads)
{
    separate();
    put_loads(loads);
    put("}");
    const Load top = loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
    stats_.value = stats_.leaves == 0 ? top : std::min(stats_.value, top);
    ++stats_.leaves;
}

TreeStats CertificateWriter::stats() const
{
    return stats_;
}

void CertificateWriter::finish()
{
    put("}\n");
    out_.flush();
    if (!out_)
        throw std::runtime_error("failed writing the certificate");
}

namespace {

void write_node(CertificateWriter &w, const ProofNode &n)
{
    if (n.is_leaf()) {
        w.leaf(n.loads);
        return;
    }
    w.begin_node(n.loads, n.item);
    for (const auto &c : n.children)
        write_node(w, c);
    w.end_node();
}

} // namespace

std::string serialize(const ProofTree &tree)
{
    std::ostringstream os;
    CertificateWriter w(os, tree.params);
    write_node(w, tree.root);
    w.finish();
    std::string s = std::move(os).str();
    s.pop_back();
    return s;
}

ProofTree deserialize(std::string_view text)
{
    const auto t = parse_text(text);
    return ProofTree{t.params, expand(t, 0)};
}

void write_certificate(const ProofTree &tree, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    CertificateWriter w(out, tree.params);
    write_node(w, tree.root);
    w.finish();
}

ProofTree read_certificate(const std::filesystem::path &path)
{
    const auto t = parse_file(path);
    return ProofTree{t.params, expand(t, 0)};
}

CertificateCheck check_certificate(const std::filesystem::path &path)
{
    const auto t = parse_file(path);
    return CertificateCheck{t.params, stats_of(t), verify_compact(t, t.params)};
}

} // namespace binstretch
