/* tslint:disable */
/* eslint-disable */

/**
 * `h_q` at the scaled argument, the per-`f` bound at full dimension and the
 * total bound, sampled on `steps` points of `(0, 1 - 1/q)`.
 */
export function bound_curves(q: number, alpha: number, alpha_prime: number, n: number, steps: number): string;

/**
 * Samples one code from `seed` and reports its dimension and minimum weight.
 */
export function sample_min_weight(q: number, lambda_exp: number, alpha: number, alpha_prime: number, n: number, seed: number, budget: number): string;

/**
 * Lengths `n ≤ n_max` with `gcd(n, qt) = 1` and `μ(n) > log_q n`.
 */
export function search_lengths(q: number, t: number, n_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bound_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly sample_min_weight: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly search_lengths: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
