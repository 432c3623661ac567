import { describe, expect, it } from "vitest";

import { validateForm, type RawFormFields } from "../src/validate.js";

function fields(overrides: Partial<RawFormFields> = {}): RawFormFields {
  return {
    theta0: "0.05",
    theta_star: "0.1",
    gamma: "0.25",
    n: "10",
    alpha: "0.0027",
    seed: "",
    ...overrides,
  };
}

describe("validateForm", () => {
  it("accepts the standard configuration", () => {
    const result = validateForm(fields());
    expect(result.ok).toBe(true);
    if (result.ok) {
      expect(result.value).toEqual({
        theta0: 0.05,
        theta_star: 0.1,
        gamma: 0.25,
        n: 10,
        alpha: 0.0027,
        seed: undefined,
      });
    }
  });

  it("rejects an exploration floor above 1/2 for two lines", () => {
    const result = validateForm(fields({ gamma: "0.6" }));
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.errors.gamma).toMatch(/\(0, 0.5\]/);
    }
  });

  it("rejects equal probabilities", () => {
    const result = validateForm(fields({ theta_star: "0.05" }));
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.errors.theta_star).toMatch(/differ/);
  });

  it("rejects fractional or tiny budgets", () => {
    expect(validateForm(fields({ n: "1" })).ok).toBe(false);
    expect(validateForm(fields({ n: "10.5" })).ok).toBe(false);
    expect(validateForm(fields({ n: "abc" })).ok).toBe(false);
  });

  it("defaults a blank false alarm rate", () => {
    const result = validateForm(fields({ alpha: "" }));
    expect(result.ok).toBe(true);
    if (result.ok) expect(result.value.alpha).toBe(0.0027);
  });

  it("parses an optional seed", () => {
    const ok = validateForm(fields({ seed: "42" }));
    expect(ok.ok).toBe(true);
    if (ok.ok) expect(ok.value.seed).toBe(42);
    expect(validateForm(fields({ seed: "-1" })).ok).toBe(false);
    expect(validateForm(fields({ seed: "1.5" })).ok).toBe(false);
  });

  it("rejects boundary probabilities", () => {
    expect(validateForm(fields({ theta0: "0" })).ok).toBe(false);
    expect(validateForm(fields({ theta0: "1" })).ok).toBe(false);
    expect(validateForm(fields({ alpha: "1" })).ok).toBe(false);
  });
});
