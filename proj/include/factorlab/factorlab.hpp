#pragma once

#include "factorlab/abelian_group.hpp"
#include "factorlab/davenport.hpp"
#include "factorlab/error.hpp"
#include "factorlab/factorization.hpp"
#include "factorlab/invariants.hpp"
#include "factorlab/io.hpp"
#include "factorlab/monoid.hpp"
#include "factorlab/structure.hpp"
#include "factorlab/transfer.hpp"
#include "factorlab/verification.hpp"
