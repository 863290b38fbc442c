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

package clinic;

import clinic.service.ClinicService;
import clinic.util.Clock;

/** Entry point for the clinic demo. */
public class ClinicApp {
    private final ClinicService service;

    public ClinicApp() {
        this.service = new ClinicService(new Clock());
    }

    public static void main(String[] args) {
        System.exit(new ClinicApp().run());
    }

    int run() {
        String banner = "clinic // not a comment";
        System.out.println(banner);
        return service.stats().count() > 0 ? 0 : 1;
    }
}
