#ifndef CSR_CSR_HPP
#define CSR_CSR_HPP

// Umbrella header: the XML tree model, the combined content/structure/
// context digest with timestamp sealing, the baseline digest schemes, the
// manifest format, verification, and the benchmark harness.

#include "csr/baselines.hpp"
#include "csr/bench.hpp"
#include "csr/bytes.hpp"
#include "csr/demo.hpp"
#include "csr/digest.hpp"
#include "csr/error.hpp"
#include "csr/fixture.hpp"
#include "csr/hash.hpp"
#include "csr/manifest.hpp"
#include "csr/verify.hpp"
#include "csr/xml.hpp"

#endif
