#pragma once

#include <branchorder/budget.hpp>
#include <branchorder/coset.hpp>
#include <branchorder/family.hpp>
#include <branchorder/homology.hpp>
#include <branchorder/identities.hpp>
#include <branchorder/json_io.hpp>
#include <branchorder/orderability.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/proof.hpp>
#include <branchorder/prove.hpp>
#include <branchorder/tietze.hpp>
#include <branchorder/universe.hpp>
#include <branchorder/verify.hpp>
#include <branchorder/word.hpp>
