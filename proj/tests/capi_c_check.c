// Copyright 2026 The GLOSA Cloud Authors
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

/* Compiled as C to keep the public header C-clean. */
#include "glosa/glosa.h"

int glosa_c_check_default_hash(char ** out)
{
  glosa_config * config = NULL;
  glosa_status st = glosa_config_default(&config);
  if (st != GLOSA_OK) {
    return (int)st;
  }
  st = glosa_config_hash(config, out);
  glosa_config_free(config);
  return (int)st;
}
