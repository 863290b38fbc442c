/*
 * Copyright 2026 The codecity Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

package clinic.model;

import java.io.Serializable;

@SuppressWarnings({"serial", "unused"})
public class Pet extends BaseEntity implements NamedEntity, Serializable {
    private String name;
    private PetType type = PetType.CAT;

    @Override
    public String getName() { return name; }

    @Override
    public void setName(final String name) { this.name = name; }

    public PetType getType() {
        return type;
    }

    public void setType(PetType type) {
        if (type == null) {
            throw new IllegalArgumentException("type");
        }
        this.type = type;
    }
}
