/** Shared test fixtures: the bundled catalog's schema, read from the repo. */

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import path from "node:path";

import type { PropertySchema } from "../src/types.js";

const here = path.dirname(fileURLToPath(import.meta.url));

export const CATALOG_PATH = path.resolve(here, "../../fixtures/dbapp_catalog.json");

export function fixtureSchema(): PropertySchema[] {
  const doc = JSON.parse(readFileSync(CATALOG_PATH, "utf-8"));
  return doc.schema as PropertySchema[];
}
