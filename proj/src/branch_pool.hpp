#ifndef F2CS_SRC_BRANCH_POOL_HPP
#define F2CS_SRC_BRANCH_POOL_HPP

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

namespace f2cs::detail {

// Branch worklist. Branches are independent once created, so any pop order
// and any number of workers are sound; callers make the final output
// schedule-independent by sorting it canonically. fifo=false pops newest
// first (depth-first).
template <typename Branch, typename Process>
void run_branch_pool(std::vector<Branch> initial, int workers, bool fifo, Process process) {
    if (workers <= 1) {
        std::deque<Branch> work(std::make_move_iterator(initial.begin()),
                                std::make_move_iterator(initial.end()));
        auto push = [&work](Branch b) { work.push_back(std::move(b)); };
        while (!work.empty()) {
            Branch b;
            if (fifo) {
                b = std::move(work.front());
                work.pop_front();
            } else {
                b = std::move(work.back());
                work.pop_back();
            }
            process(std::move(b), push);
        }
        return;
    }

    std::mutex mu;
    std::condition_variable cv;
    std::vector<Branch> stack = std::move(initial);
    int active = 0;
    bool done = false;

    auto worker = [&] {
        std::unique_lock<std::mutex> lock(mu);
        while (true) {
            cv.wait(lock, [&] { return !stack.empty() || done; });
            if (stack.empty())
                return; // done
            Branch b = std::move(stack.back());
            stack.pop_back();
            ++active;
            lock.unlock();

            std::vector<Branch> produced;
            auto push = [&produced](Branch nb) { produced.push_back(std::move(nb)); };
            process(std::move(b), push);

            lock.lock();
            for (auto& nb : produced)
                stack.push_back(std::move(nb));
            --active;
            if (stack.empty() && active == 0) {
                done = true;
                cv.notify_all();
            } else if (!produced.empty()) {
                cv.notify_all();
            }
        }
    };

    if (stack.empty())
        return;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();
}

} // namespace f2cs::detail

#endif
