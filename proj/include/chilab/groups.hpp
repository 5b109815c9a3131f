#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chilab/field.hpp"
#include "chilab/matrix.hpp"

namespace chilab {

// Small finite group given by dense product/inverse tables over element
// indices, with display names and conjugacy classes.
class GroupTable {
public:
    static constexpr u64 kMaxTableSize = 4096;

    static GroupTable symmetric(u32 n);
    static GroupTable alternating(u32 n);
    static GroupTable cyclic(u32 n);
    static GroupTable sl2(u64 q);
    static GroupTable sl3(u64 q);
    static GroupTable su3(u64 q);
    // Validates identity, inverses and associativity (full check).
    static GroupTable custom(std::vector<std::vector<u32>> product, std::string kind);

    u32 size() const { return u32(product_.size()); }
    u32 identity() const { return identity_; }
    u32 mul(u32 a, u32 b) const { return product_[a][b]; }
    u32 inv(u32 a) const { return inverse_[a]; }
    u32 pow(u32 a, i64 e) const;
    const std::string& kind() const { return kind_; }
    const std::string& name(u32 a) const { return names_[a]; }

    // Conjugacy classes (sorted representatives, computed on construction).
    const std::vector<std::vector<u32>>& classes() const { return classes_; }
    u32 class_of(u32 a) const { return class_of_[a]; }

    // True iff the permutation phi is an automorphism (full pair check).
    bool is_automorphism(const std::vector<u32>& phi) const;

    // For matrix-backed groups: the underlying matrices, else empty.
    const std::vector<SquareMatrix>& matrices() const { return matrices_; }

    void set_names(std::vector<std::string> names) {
        if (names.size() != product_.size()) throw Error("name count mismatch");
        names_ = std::move(names);
    }
    void set_matrices(std::vector<SquareMatrix> mats) {
        if (mats.size() != product_.size()) throw Error("matrix count mismatch");
        matrices_ = std::move(mats);
    }

private:
    void finalize();
    std::string kind_;
    u32 identity_ = 0;
    std::vector<std::vector<u32>> product_;
    std::vector<u32> inverse_;
    std::vector<std::string> names_;
    std::vector<std::vector<u32>> classes_;
    std::vector<u32> class_of_;
    std::vector<SquareMatrix> matrices_;
};

}  // namespace chilab
