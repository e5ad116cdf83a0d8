#pragma once

#include "svdmark/svdmark.h"

#include <memory>
#include <stdexcept>
#include <string>

namespace svdmark_cli {

struct MatrixFree {
    void operator()(svdmark_matrix* p) const { svdmark_matrix_free(p); }
};
struct SideInfoFree {
    void operator()(svdmark_sideinfo* p) const { svdmark_sideinfo_free(p); }
};
struct RgbFree {
    void operator()(svdmark_rgb* p) const { svdmark_rgb_free(p); }
};
struct BundleFree {
    void operator()(svdmark_bundle* p) const { svdmark_bundle_free(p); }
};
struct ReportFree {
    void operator()(svdmark_report* p) const { svdmark_report_free(p); }
};

using MatrixPtr = std::unique_ptr<svdmark_matrix, MatrixFree>;
using SideInfoPtr = std::unique_ptr<svdmark_sideinfo, SideInfoFree>;
using RgbPtr = std::unique_ptr<svdmark_rgb, RgbFree>;
using BundlePtr = std::unique_ptr<svdmark_bundle, BundleFree>;
using ReportPtr = std::unique_ptr<svdmark_report, ReportFree>;

/// A failed library call, carrying the library's one-line message.
class ApiError : public std::runtime_error {
public:
    ApiError(svdmark_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
    svdmark_status status() const noexcept { return status_; }

private:
    svdmark_status status_;
};

inline void check(svdmark_status status) {
    if (status != SVDMARK_OK)
        throw ApiError(status, svdmark_last_error());
}

} // namespace svdmark_cli
