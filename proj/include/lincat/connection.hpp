#pragma once

// Connections on projective modules M = e C(I).
//
// A connection is stored through a connection matrix Lambda on the free cover
// C(I). On an e-fixed column v of degree-n forms the extended connection acts
// by nabla^n(v) = e (Lambda v + dv); for e = 1 this is the free connection
// given by Lambda. Compressing a free connection through e is therefore just a
// change of module.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lincat/dg.hpp"
#include "lincat/module.hpp"

namespace lincat {

class Connection {
public:
    /// Lambda must be a degree-1 matrix over the module's index family.
    Connection(std::shared_ptr<const DGCategory> w, ProjectiveModule module, FormMatrix lambda);

    const DGCategory& forms() const { return *w_; }
    const std::shared_ptr<const DGCategory>& forms_ptr() const { return w_; }
    const ProjectiveModule& module() const { return module_; }
    /// Connection matrix on the free cover.
    const FormMatrix& lambda() const { return lambda_; }

private:
    std::shared_ptr<const DGCategory> w_;
    ProjectiveModule module_;
    FormMatrix lambda_;
};

/// Connection on C(I) with matrix Lambda; Lambda = 0 gives nabla(v) = dv.
Connection free_connection(std::shared_ptr<const DGCategory> w, const std::vector<ObjectId>& index,
                           const FormMatrix& lambda);
/// Compression of the Lambda = 0 connection on C(I) through e. Its free-cover
/// matrix is taken as de, which induces the same map on e-fixed columns.
Connection levi_civita(std::shared_ptr<const DGCategory> w, const ProjectiveModule& m);
Connection direct_sum_connection(const Connection& a, const Connection& b);
/// Induced connection on e C(I) for a connection on C(I).
Connection compress_connection(const Connection& free, const ProjectiveModule& target);

/// Matrix of nabla on the generators: column i is nabla(m_i) = e(Lambda e + de) e_i.
FormMatrix generator_matrix(const Connection& c);

/// nabla^n on a column (rows = I, one column) of degree-n forms fixed by e.
/// Throws truncation_error when n + 1 > N.
FormMatrix extend(const Connection& c, const FormMatrix& column);
/// Applies extend to every column of a matrix with e-fixed columns.
FormMatrix extend_columns(const Connection& c, const FormMatrix& columns);

struct CurvatureData {
    FormMatrix gamma;          // columns R(m_i), fixed by e
    FormMatrix gamma_formula;  // e (d Lambda' + Lambda'^2) with Lambda' = generator_matrix
};

/// Both computations of Gamma; throws certification_error if they differ and
/// truncation_error if N < 2.
CurvatureData curvature(const Connection& c);
/// Gamma^q as a matrix power; q = 0 gives e. Requires 2q <= N.
FormMatrix curvature_power(const Connection& c, std::size_t q);
/// R^q on the generators computed by 2q applications of extend.
FormMatrix iterated_curvature(const Connection& c, std::size_t q);

}  // namespace lincat
