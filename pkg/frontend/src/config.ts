/** API base URL resolution, in priority order: an explicit
 * `window.__GREENOPS_API_BASE__` (set by whoever serves the bundle),
 * the `VITE_API_BASE` build variable, then same-origin ("" works with
 * the dev-server proxy and with the bundle mounted next to the API).
 */
export function resolveApiBase(): string {
  const fromWindow = (globalThis as { __GREENOPS_API_BASE__?: string }).__GREENOPS_API_BASE__;
  if (fromWindow) return fromWindow;
  const env = (import.meta as { env?: Record<string, string> }).env;
  return env?.VITE_API_BASE ?? "";
}
