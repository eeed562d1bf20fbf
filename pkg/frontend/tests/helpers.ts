export async function waitFor(
  predicate: () => boolean | Promise<boolean>,
  timeoutMs = 15000,
  stepMs = 50,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      if (await predicate()) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, stepMs));
  }
  throw new Error(
    `waitFor timed out after ${timeoutMs}ms` +
      (lastError ? `; last error: ${String(lastError)}` : ""),
  );
}

export function click(el: Element): void {
  (el as HTMLElement).click();
}

export function setInput(el: HTMLInputElement, value: string): void {
  el.value = value;
  el.dispatchEvent(new Event("input", { bubbles: true }));
}
