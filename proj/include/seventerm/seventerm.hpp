#pragma once

// Convenience header pulling in the whole library.

#include "seventerm/abelian.hpp"
#include "seventerm/cochain.hpp"
#include "seventerm/cohomology.hpp"
#include "seventerm/concrete_extension.hpp"
#include "seventerm/derivations.hpp"
#include "seventerm/documents.hpp"
#include "seventerm/errors.hpp"
#include "seventerm/abelianized.hpp"
#include "seventerm/extensions.hpp"
#include "seventerm/gmodule.hpp"
#include "seventerm/group.hpp"
#include "seventerm/group_builders.hpp"
#include "seventerm/integer.hpp"
#include "seventerm/matrix.hpp"
#include "seventerm/naturality.hpp"
#include "seventerm/presets.hpp"
#include "seventerm/report.hpp"
#include "seventerm/ring.hpp"
#include "seventerm/seven_term.hpp"
#include "seventerm/smith.hpp"
#include "seventerm/subgroups.hpp"
#include "seventerm/verification.hpp"
