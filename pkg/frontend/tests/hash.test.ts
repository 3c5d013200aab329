// Digest parity with the server: fixtures carry server-produced snapshots,
// canonical bytes, and SHA-256 digests; the client must reproduce them
// byte-for-byte from the snapshot alone.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { canonicalBytes, pyFloatRepr, pythonRound, sceneDigest } from "../src/hash.js";
import { Replica } from "../src/replica.js";
import type { SceneSnapshot } from "../src/protocol.js";

interface DigestCase {
  name: string;
  snapshot: SceneSnapshot;
  canonical_b64: string;
  digest: string;
}

const cases: DigestCase[] = JSON.parse(
  readFileSync(new URL("./fixtures/digest_cases.json", import.meta.url), "utf-8"),
);

function loadReplica(snapshot: SceneSnapshot): Replica {
  const replica = new Replica();
  replica.apply({ v: 1, session: "s", seq: 1, kind: "snapshot", scene: snapshot, tick: 0 });
  return replica;
}

describe("server digest parity", () => {
  for (const testCase of cases) {
    it(`matches canonical bytes for ${testCase.name}`, () => {
      const replica = loadReplica(testCase.snapshot);
      const expected = Buffer.from(testCase.canonical_b64, "base64");
      const actual = Buffer.from(canonicalBytes(replica.entities));
      expect(actual.toString("utf-8")).toBe(expected.toString("utf-8"));
    });

    it(`matches the SHA-256 digest for ${testCase.name}`, async () => {
      const replica = loadReplica(testCase.snapshot);
      expect(await sceneDigest(replica.entities)).toBe(testCase.digest);
    });
  }
});

describe("python-style float formatting", () => {
  it("prints integral floats with a trailing .0", () => {
    expect(pyFloatRepr(2)).toBe("2.0");
    expect(pyFloatRepr(-0)).toBe("-0.0");
    expect(pyFloatRepr(30)).toBe("30.0");
  });

  it("keeps shortest-decimal forms in the plain range", () => {
    expect(pyFloatRepr(0.2)).toBe("0.2");
    expect(pyFloatRepr(1.77)).toBe("1.77");
    expect(pyFloatRepr(-0.4925)).toBe("-0.4925");
  });

  it("switches to exponent form where the server does", () => {
    expect(pyFloatRepr(1e-5)).toBe("1e-05");
    expect(pyFloatRepr(1.5e20)).toBe("1.5e+20");
  });

  it("rounds halves to even like the server quantizer", () => {
    expect(pythonRound(0.5)).toBe(0);
    expect(pythonRound(1.5)).toBe(2);
    expect(pythonRound(2.5)).toBe(2);
    expect(pythonRound(-0.5)).toBe(0);
    expect(pythonRound(-1.5)).toBe(-2);
  });
});
