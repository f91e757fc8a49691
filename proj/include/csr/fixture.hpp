#ifndef CSR_FIXTURE_HPP
#define CSR_FIXTURE_HPP

#include <string_view>

namespace csr {

/// Bundled calibration-certificate document used by the demo scenarios and
/// the documentation. The `created` attribute is the creation timestamp the
/// seal binds to.
inline constexpr std::string_view kCertificateXml =
    R"(<?xml version="1.0" encoding="UTF-8"?>
<Certificate created="2009-04-10T09:30:00Z">
  <Title>Certificate of calibration</Title>
  <ReferenceNumber>TDFRG</ReferenceNumber>
  <Description>A single-mode Fibre Attention Standard...</Description>
  <Data>This reported expanded uncertainty is based on...</Data>
  <Measurements>
    <Description>The measurement of the spectral attenuation...</Description>
    <Table>Designed figure used in measurement</Table>
  </Measurements>
  <Results>
    <Description>The total attenuation...</Description>
    <Graph>Chart related to measurement results</Graph>
    <Table>Figure of measurement results</Table>
  </Results>
</Certificate>
)";

inline constexpr std::string_view kCertificateCreated = "2009-04-10T09:30:00Z";

}  // namespace csr

#endif
