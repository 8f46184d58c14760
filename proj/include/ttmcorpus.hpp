// Copyright 2026 The ttmcorpus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ttmcorpus/agreement.hpp"
#include "ttmcorpus/compatibility.hpp"
#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/crossval.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/experiment.hpp"
#include "ttmcorpus/features.hpp"
#include "ttmcorpus/generator.hpp"
#include "ttmcorpus/interchange.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/lint.hpp"
#include "ttmcorpus/logreg.hpp"
#include "ttmcorpus/markup.hpp"
#include "ttmcorpus/random.hpp"
#include "ttmcorpus/segmentation.hpp"
